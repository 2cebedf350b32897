#pragma once

#include "subword/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace subword {

using Witness = std::variant<Word, Ideal>;

struct Verdict {
    bool holds = true;
    std::optional<Witness> witness;
    std::string strategy;
    std::map<std::string, std::uint64_t> stats;
    /// Equivalence only: "left-to-right" when the witness lies in the closure of the left model.
    std::string direction;
};

/// NFA for the closure of the model; absent for grammars.
std::optional<Nfa> to_dc_nfa(const ModelRef& m, DcStats* stats = nullptr);

/// Ideals whose union is the closure of the model.
std::vector<Ideal> closure_ideals(const ModelRef& m);

/// Membership in the closure of the model.
bool closure_member(const ModelRef& m, const Word& w);

inline const std::vector<std::string>& strategy_names() {
    static const std::vector<std::string> names{"cfg-regular", "dcnfa-product", "ideal-witness", "short-witness",
                                                "sup-route"};
    return names;
}

std::vector<std::string> applicable_strategies(const ModelRef& k, const ModelRef& l);
std::string auto_strategy(const ModelRef& k, const ModelRef& l);

/// Closure of k inside closure of l. strategy is "auto" or one of strategy_names().
Verdict decide_inclusion(const ModelRef& k, const ModelRef& l, const std::string& strategy = "auto");
Verdict decide_equivalence(const ModelRef& k, const ModelRef& l, const std::string& strategy = "auto");

std::optional<Word> find_word_witness(const ModelRef& k, const ModelRef& l);

/// Word witnesses: in the closure of k, outside that of l. Ideal witnesses: included in k's, not in l's.
bool verify_witness(const ModelRef& k, const ModelRef& l, const Witness& w);

struct StrategyRow {
    std::string strategy;
    bool holds = false;
    std::map<std::string, std::uint64_t> stats;
    double seconds = 0;
};

struct CrossReport {
    std::vector<StrategyRow> rows;  // sorted by strategy
    bool holds = false;
};

/// Runs every applicable strategy; throws Error when two verdicts differ.
CrossReport cross_validate(const ModelRef& k, const ModelRef& l);

std::string format_witness(const Witness& w, const Alphabet& x);

}  // namespace subword
