#pragma once

#include "subword/ideal.hpp"
#include "subword/nfa.hpp"

#include <optional>
#include <string>
#include <vector>

namespace subword {

struct Symbol {
    bool terminal;
    int id;  // letter or nonterminal index
    bool operator==(const Symbol&) const = default;
    auto operator<=>(const Symbol&) const = default;
};

struct Production {
    int lhs;
    std::vector<Symbol> body;
    bool operator==(const Production&) const = default;
};

struct Cfg {
    Alphabet terminals;
    std::vector<std::string> nonterminals;
    std::vector<Production> productions;
    int start = 0;

    int add_nonterminal(const std::string& name);
    int find_nonterminal(const std::string& name) const;  // -1 when absent
    void validate() const;
};

/// Bodies are BC, a or empty. `empty` marks the grammar of the empty language.
struct CnfGrammar {
    Alphabet terminals;
    std::vector<std::string> names;
    int start = 0;
    bool empty = false;
    struct Binary {
        int lhs, left, right;
    };
    struct Unary {
        int lhs;
        Letter letter;
    };
    std::vector<Binary> binary;
    std::vector<Unary> unary;
    std::vector<bool> eps;  // A -> eps

    std::size_t size() const { return names.size(); }
};

/// Removes useless symbols, unit rules and long bodies; keeps A -> eps rules.
CnfGrammar to_cnf(const Cfg& g);
Cfg to_cfg(const CnfGrammar& g);

std::vector<bool> nullable(const CnfGrammar& g);
bool cyk_accepts(const CnfGrammar& g, const Word& w);
std::vector<Word> enumerate_cfg_upto(const CnfGrammar& g, std::size_t maxlen);

/// Adds A -> eps for every nonterminal.
CnfGrammar downward_grammar(const CnfGrammar& g);

/// A =>* s, with s over terminals and nonterminals of g.
bool sentential_member(const CnfGrammar& g, int a, const std::vector<Symbol>& s);

struct PumpSets {
    std::vector<std::vector<int>> left;   // per letter: A =>* a A
    std::vector<std::vector<int>> right;  // per letter: A =>* A a
};
PumpSets compute_pump_sets(const CnfGrammar& g);

/// Terminal i of the result stands for order[i] marked as unbounded.
Cfg omega_grammar(const CnfGrammar& gd, const std::vector<Letter>& order);

/// Complete DFA for order[0]* order[1]* ... (letters must be distinct).
Dfa block_dfa(const Alphabet& x, const std::vector<Letter>& order);

/// Whether the closure of L(g) is all of order[0]* ... order[n-1]*.
/// Throws when L(g) is not inside that bounded language.
bool sup_decide(const CnfGrammar& g, const std::vector<Letter>& order);

bool cfg_regular_inclusion(const CnfGrammar& g, const Dfa& d);
/// A shortest word of L(g) outside L(d).
std::optional<Word> cfg_regular_counterexample(const CnfGrammar& g, const Dfa& d);

bool ideal_in_cfg(const Ideal& i, const CnfGrammar& g);

struct CfgDecompositionOptions {
    std::size_t max_length = 6;
};
std::vector<Ideal> cfg_ideal_decomposition(const CnfGrammar& g, const CfgDecompositionOptions& opts = {});

/// Right-linear grammar with the language of the automaton.
Cfg nfa_to_cfg(const Nfa& a);

}  // namespace subword
