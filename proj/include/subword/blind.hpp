#pragma once

#include "subword/linalg.hpp"
#include "subword/nfa.hpp"

#include <optional>
#include <string>
#include <vector>

namespace subword {

struct BlindTransition {
    int from;
    Letter label;
    std::vector<int> delta;  // k entries in {-1,0,1}
    int to;
    bool operator==(const BlindTransition&) const = default;
};

struct BlindAutomaton {
    Alphabet alphabet;
    int k = 0;
    int num_states = 1;
    std::vector<BlindTransition> transitions;
    int initial = 0;
    std::vector<bool> finals;
    std::vector<std::string> names;

    BlindAutomaton() = default;
    BlindAutomaton(Alphabet a, int counters, int n)
        : alphabet(std::move(a)), k(counters), num_states(n), finals(static_cast<std::size_t>(n), false) {}

    int add_state();
    void add(int from, Letter label, std::vector<int> delta, int to) {
        transitions.push_back({from, label, std::move(delta), to});
    }
    void set_final(int q, bool f = true) { finals.at(static_cast<std::size_t>(q)) = f; }
    bool is_final(int q) const { return finals[static_cast<std::size_t>(q)]; }
    void validate() const;
    std::string state_name(int q) const;
};

/// Transition indices, consecutive endpoints matching.
using Walk = std::vector<std::size_t>;

IntVec effect(const BlindAutomaton& a, const Walk& w);
bool is_chained(const BlindAutomaton& a, const Walk& w);
Word walk_word(const BlindAutomaton& a, const Walk& w);
int walk_start(const BlindAutomaton& a, const Walk& w, int fallback);
int walk_end(const BlindAutomaton& a, const Walk& w, int fallback);
bool is_accepting_walk(const BlindAutomaton& a, const Walk& w);

/// Breadth-first search over (state, position, counters), counters bounded by cbound in
/// absolute value and at most ebound consecutive empty moves. Sound, exact only within the bounds.
bool accepts_bounded(const BlindAutomaton& a, const Word& w, int cbound, int ebound);
std::vector<Word> enumerate_bounded(const BlindAutomaton& a, std::size_t maxlen, int cbound, int ebound);

/// The automaton with the counters forgotten.
Nfa underlying_nfa(const BlindAutomaton& a);

/// Synchronous product with an NFA; counters come from a.
BlindAutomaton blind_product(const BlindAutomaton& a, const Nfa& n);

/// Every simple cycle (as a walk starting at its least state). Throws ResourceError past the cap.
std::vector<Walk> simple_cycles(const BlindAutomaton& a);

/// Exact emptiness: an accepting walk with zero effect, or nothing.
/// Walk = simple path plus connected simple cycles, multiplicities from an exact integer solver.
std::optional<Walk> accepting_walk(const BlindAutomaton& a);

bool blind_member(const BlindAutomaton& a, const Word& w);
/// w in the downward closure of L(a), exact.
bool blind_closure_member(const BlindAutomaton& a, const Word& w);

enum class DcMode { B1, B2, B3 };

struct DcOptions {
    DcMode mode = DcMode::B3;
    /// Restrict top-level moves to a simple path and each stack frame to a simple cycle.
    bool simple_frames = true;
    /// Fixed capacity of the precise counter. Unset: certified deepening.
    std::optional<BigInt> capacity;
};

struct DcStats {
    std::uint64_t states = 0;
    std::uint64_t transitions = 0;
    BigInt capacity = 0;
    unsigned rounds = 0;
    bool reached_bound = false;
};

BigInt worst_case_capacity(std::uint64_t n, std::uint64_t k);
BigInt instance_capacity(const BlindAutomaton& a);
BigInt dc_state_bound(std::uint64_t n, std::uint64_t k);

/// NFA for the downward closure of L(a).
Nfa dc_nfa(const BlindAutomaton& a, const DcOptions& opts = {}, DcStats* stats = nullptr);

}  // namespace subword
