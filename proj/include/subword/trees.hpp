#pragma once

#include "subword/blind.hpp"
#include "subword/ideal.hpp"

#include <string>
#include <utility>
#include <vector>

namespace subword {

enum class CycleKind { NotCycle, Cycle, Prime, Simple };

/// Walks are read from `start` when empty.
CycleKind classify_cycle(const BlindAutomaton& a, const Walk& w);

struct WalkDecomposition {
    Walk residual;
    /// (position in residual, prime cycle) in walk order; position i means "before residual[i]".
    std::vector<std::pair<std::size_t, Walk>> cycles;
};

/// Cuts the walk back at every repeated state. The residual visits no state twice.
WalkDecomposition decompose_walk(const BlindAutomaton& a, const Walk& w);
Walk recompose(const WalkDecomposition& d);

struct TreeVertex {
    Walk gamma;  // simple cycle
    /// (i, child): the child's cycle starts at the source of gamma[i], 1 <= i < |gamma|; sorted by i.
    std::vector<std::pair<std::size_t, TreeVertex>> children;
    bool fixed = false;
};

using InsertionTree = TreeVertex;

InsertionTree build_insertion_tree(const BlindAutomaton& a, const Walk& prime_cycle);
Walk flatten(const InsertionTree& t);
std::size_t tree_height(const InsertionTree& t);
std::size_t tree_size(const InsertionTree& t);
/// Every vertex satisfies the simple-cycle and proper-occurrence conditions.
bool tree_valid(const BlindAutomaton& a, const InsertionTree& t);
std::string format_tree(const BlindAutomaton& a, const InsertionTree& t);

struct PumpSequence {
    std::vector<InsertionTree> trees;
};

bool compatible(const BlindAutomaton& a, const PumpSequence& s);
std::size_t fixed_count(const PumpSequence& s);

struct PumpStep {
    enum Kind { Split, Duplicate } kind;
    /// Index of the tree, then child indices down to the target vertex.
    std::vector<std::size_t> path;
    /// Split: the vertex keeps its first `keep` children.
    std::size_t keep = 0;
};

PumpSequence pump(const PumpSequence& s, const std::vector<PumpStep>& script);
Walk flatten(const PumpSequence& s);

/// Ideal expression for the closure of everything obtainable from s by pumping.
IdealExpr pump_ideal(const BlindAutomaton& a, const PumpSequence& s);

struct WalkIdeal {
    Ideal ideal;
    IdealExpr expr;
    std::size_t fixed = 0;
    std::size_t height = 0;
};

WalkIdeal ideal_for_walk_detailed(const BlindAutomaton& a, const Walk& w);
Ideal ideal_for_walk(const BlindAutomaton& a, const Walk& w);

/// (5n)^(7(k+1)^2)
BigInt walk_ideal_bound(std::uint64_t n, std::uint64_t k);

}  // namespace subword
