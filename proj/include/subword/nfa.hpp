#pragma once

#include "subword/alphabet.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace subword {

struct Transition {
    int from;
    Letter label;  // EPS for an empty move
    int to;
    bool operator==(const Transition&) const = default;
    auto operator<=>(const Transition&) const = default;
};

struct Nfa {
    Alphabet alphabet;
    int num_states = 1;
    std::vector<Transition> transitions;
    int initial = 0;
    std::vector<bool> finals;          // size num_states
    std::vector<std::string> names;    // optional, size num_states when present

    Nfa() = default;
    Nfa(Alphabet a, int n) : alphabet(std::move(a)), num_states(n), finals(static_cast<std::size_t>(n), false) {}

    int add_state();
    void add(int from, Letter label, int to) { transitions.push_back({from, label, to}); }
    void set_final(int q, bool f = true) { finals.at(static_cast<std::size_t>(q)) = f; }
    bool is_final(int q) const { return finals[static_cast<std::size_t>(q)]; }
    void validate() const;
    std::string state_name(int q) const;
};

struct Dfa {
    Alphabet alphabet;
    int num_states = 1;
    std::vector<int> delta;  // num_states * |alphabet|
    int initial = 0;
    std::vector<bool> finals;
    /// Rank per state; p -x-> q implies rank[p] <= rank[q].
    std::optional<std::vector<int>> ordered_witness;

    int next(int q, Letter a) const {
        return delta[static_cast<std::size_t>(q) * alphabet.size() + static_cast<std::size_t>(a)];
    }
    bool order_valid() const;
};

/// Outgoing transition lists indexed by source state.
std::vector<std::vector<Transition>> out_edges(const Nfa& a);

/// States reachable from `from` using only EPS moves (sorted).
std::vector<int> eps_closure(const Nfa& a, const std::vector<int>& from);

Nfa downward_close_nfa(const Nfa& a);
Dfa determinize(const Nfa& a);
Dfa complement(const Dfa& d);
Nfa dfa_to_nfa(const Dfa& d);
Nfa intersect(const Nfa& a, const Nfa& b);
bool is_empty(const Nfa& a);
bool accepts(const Nfa& a, const Word& w);
bool accepts(const Dfa& d, const Word& w);

/// Keeps only states reachable from the initial state and co-reachable to a final one.
/// The initial state is always kept.
Nfa trim(const Nfa& a);

/// Shortest (shortlex-first) word in L(a) \ L(b), explored on the fly.
std::optional<Word> inclusion_counterexample(const Nfa& a, const Nfa& b);
bool nfa_inclusion(const Nfa& a, const Nfa& b);
/// Literal construction: emptiness of a x complement(determinize(b)).
bool nfa_inclusion_reference(const Nfa& a, const Nfa& b);

/// L(a) restricted to words of length <= maxlen, in shortlex order.
std::vector<Word> enumerate_upto(const Nfa& a, std::size_t maxlen);

Dfa subset_reject_dfa(const Nfa& a);

struct WitnessSearch {
    std::optional<Word> witness;
    std::uint64_t words_checked = 0;
};

/// Shortlex-first w with |w| <= |states(a)|+1, member_k(w) and w outside the closure of L(a).
/// member_k must decide membership in a downward-closed language.
WitnessSearch find_short_witness(const std::function<bool(const Word&)>& member_k, const Nfa& a,
                                 const Alphabet& alphabet);

/// Same search, without the reject automaton: words up to `bound` in shortlex order,
/// first w with member_k(w) && !member_l(w). Both predicates must be downward closed.
WitnessSearch find_bounded_witness(const std::function<bool(const Word&)>& member_k,
                                   const std::function<bool(const Word&)>& member_l,
                                   const Alphabet& alphabet, std::size_t bound);

}  // namespace subword
