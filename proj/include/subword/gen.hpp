#pragma once

#include "subword/model.hpp"

#include <cstdint>
#include <vector>

namespace subword {

struct SubsetSumInstance {
    std::vector<std::uint64_t> u, v;
    std::uint64_t t = 0;
    unsigned k = 1;  // bit width of every entry, t included

    void validate() const;
};

struct SubsetSumGadget {
    Nfa words;                 // {0,1}^n
    BlindAutomaton automaton;  // x such that <u,x> + <v,y> = t for some y, 3k counters
};

SubsetSumGadget gen_subset_sum(const SubsetSumInstance& inst);
/// For every x some y: brute force, n <= 12.
bool subset_sum_oracle(const SubsetSumInstance& inst);
SubsetSumInstance random_subset_sum(std::uint64_t seed, std::size_t n, unsigned k);

/// A_i -> A_{i-1} A_{i-1}, A_0 -> a; generates a^(2^n).
Cfg gen_pow2_cfg(std::size_t n);
/// n+1 counters, doubling from counter i into counter i+1; accepts a^(2^n).
BlindAutomaton gen_pow2_blind(std::size_t n);

enum class ModelKind { Nfa, Blind, Ideal, Cfg };

struct RandomParams {
    std::size_t alphabet = 2;
    std::size_t states = 3;
    std::size_t counters = 1;
    std::size_t transitions = 0;  // 0: twice the number of states
    std::size_t ideal_length = 2;
    std::size_t nonterminals = 3;
    std::size_t productions = 5;
};

/// Deterministic in (kind, seed, params).
ModelRef gen_random(ModelKind kind, std::uint64_t seed, const RandomParams& p = {});

}  // namespace subword
