#include "corpus.hpp"
#include "subword/trees.hpp"

#include <doctest.h>

using namespace subword;
using namespace corpus;

namespace {

// 0 -a-> 1, 1 -b-> 1, 1 -a-> 0
BlindAutomaton loop_machine() {
    BlindAutomaton a(ab(), 0, 2);
    a.add(0, 0, {}, 1);
    a.add(1, 1, {}, 1);
    a.add(1, 0, {}, 0);
    a.set_final(0);
    return a;
}

// random chained walk from the initial state
Walk random_walk(Rng& g, const BlindAutomaton& a, std::size_t len) {
    Walk w;
    int q = a.initial;
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<std::size_t> out;
        for (std::size_t t = 0; t < a.transitions.size(); ++t)
            if (a.transitions[t].from == q) out.push_back(t);
        if (out.empty()) break;
        const auto t = out[static_cast<std::size_t>(below(g, out.size()))];
        w.push_back(t);
        q = a.transitions[t].to;
    }
    return w;
}

std::vector<int> visited(const BlindAutomaton& a, const Walk& w) {
    std::vector<int> s{walk_start(a, w, a.initial)};
    for (auto t : w) s.push_back(a.transitions[t].to);
    return s;
}

}  // namespace

TEST_SUITE("insertion_trees") {

TEST_CASE("classify_cycle") {
    auto a = loop_machine();
    CHECK(classify_cycle(a, {0}) == CycleKind::NotCycle);
    CHECK(classify_cycle(a, {}) == CycleKind::NotCycle);
    CHECK(classify_cycle(a, {0, 2}) == CycleKind::Simple);
    CHECK(classify_cycle(a, {1}) == CycleKind::Simple);
    CHECK(classify_cycle(a, {0, 1, 2}) == CycleKind::Prime);
    CHECK(classify_cycle(a, {0, 2, 0, 2}) == CycleKind::Cycle);
    CHECK(classify_cycle(a, {0, 1}) == CycleKind::NotCycle);
}

TEST_CASE("decompose_walk example") {
    auto a = anbn_blind();
    const Walk w{0, 0, 1, 2, 2};
    auto d = decompose_walk(a, w);
    CHECK(d.residual == Walk{1});
    REQUIRE(d.cycles.size() == 4);
    CHECK(d.cycles[0] == std::pair<std::size_t, Walk>{0, {0}});
    CHECK(d.cycles[2] == std::pair<std::size_t, Walk>{1, {2}});
    CHECK(recompose(d) == w);
    CHECK_THROWS_AS(decompose_walk(a, {0, 2}), Error);
}

TEST_CASE("decompose_walk properties") {
    Rng g(31);
    for (int it = 0; it < 200; ++it) {
        auto a = random_blind(g, ab(), 1);
        const Walk w = random_walk(g, a, static_cast<std::size_t>(below(g, 14)));
        auto d = decompose_walk(a, w);
        CHECK(recompose(d) == w);
        auto s = visited(a, d.residual);
        std::sort(s.begin(), s.end());
        CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
        std::size_t prev = 0;
        for (const auto& [pos, c] : d.cycles) {
            CHECK(pos >= prev);
            CHECK(pos <= d.residual.size());
            prev = pos;
            const auto k = classify_cycle(a, c);
            CHECK((k == CycleKind::Prime || k == CycleKind::Simple));
        }
    }
}

TEST_CASE("insertion tree example") {
    auto a = loop_machine();
    auto t = build_insertion_tree(a, {0, 1, 2});
    CHECK(t.gamma == Walk{0, 2});
    REQUIRE(t.children.size() == 1);
    CHECK(t.children[0].first == 1);
    CHECK(t.children[0].second.gamma == Walk{1});
    CHECK(flatten(t) == Walk{0, 1, 2});
    CHECK(tree_height(t) == 1);
    CHECK(tree_size(t) == 2);
    CHECK(tree_valid(a, t));
    CHECK(format_tree(a, t) == "q0 -a-> q1 -a-> q0\n  @1 q1 -b-> q1\n");
    CHECK_THROWS_AS(build_insertion_tree(a, {0, 2, 0, 2}), Error);
}

TEST_CASE("insertion trees of random prime cycles") {
    Rng g(32);
    int seen = 0;
    for (int it = 0; it < 400; ++it) {
        auto a = random_blind(g, ab(), 1);
        const Walk w = random_walk(g, a, 3 + static_cast<std::size_t>(below(g, 12)));
        for (const auto& [pos, c] : decompose_walk(a, w).cycles) {
            auto t = build_insertion_tree(a, c);
            CHECK(tree_valid(a, t));
            CHECK(flatten(t) == c);
            CHECK(tree_height(t) < static_cast<std::size_t>(a.num_states));
            CHECK(effect(a, flatten(t)) == effect(a, c));
            seen += classify_cycle(a, c) == CycleKind::Prime;
        }
    }
    CHECK(seen > 20);
}

TEST_CASE("pump") {
    auto a = loop_machine();
    PumpSequence s{{build_insertion_tree(a, {0, 1, 2})}};
    CHECK(compatible(a, s));

    auto dup = pump(s, {{PumpStep::Duplicate, {0, 0}, 0}});
    CHECK(flatten(dup) == Walk{0, 1, 1, 2});
    auto split = pump(s, {{PumpStep::Split, {0}, 0}});
    CHECK(flatten(split) == Walk{0, 2, 0, 1, 2});
    auto both = pump(s, {{PumpStep::Duplicate, {0}, 0}, {PumpStep::Duplicate, {1, 0}, 0}});
    CHECK(flatten(both) == Walk{0, 1, 2, 0, 1, 1, 2});
    CHECK(compatible(a, both));

    PumpSequence f = s;
    f.trees[0].fixed = true;
    CHECK(fixed_count(f) == 1);
    CHECK_THROWS_AS(pump(f, {{PumpStep::Split, {0}, 0}}), Error);
    CHECK_THROWS_AS(pump(f, {{PumpStep::Duplicate, {0}, 0}}), Error);
    CHECK_NOTHROW(pump(f, {{PumpStep::Duplicate, {0, 0}, 0}}));
    CHECK_THROWS_AS(pump(s, {{PumpStep::Duplicate, {3}, 0}}), Error);
}

TEST_CASE("pump_ideal") {
    auto a = loop_machine();
    PumpSequence s{{build_insertion_tree(a, {0, 1, 2})}};
    CHECK(format_ideal(normalize(pump_ideal(a, s))) == "[a b]");
    s.trees[0].fixed = true;
    CHECK(format_ideal(normalize(pump_ideal(a, s))) == "a? [b] a?");
}

TEST_CASE("pumped walks stay inside the pump ideal") {
    Rng g(33);
    auto a = loop_machine();
    PumpSequence base{{build_insertion_tree(a, {0, 1, 2})}};
    base.trees[0].fixed = true;
    const Ideal i = normalize(pump_ideal(a, base));
    for (int it = 0; it < 50; ++it) {
        std::vector<PumpStep> script;
        for (int j = below(g, 4); j > 0; --j) script.push_back({PumpStep::Duplicate, {0, 0}, 0});
        auto p = pump(base, script);
        CHECK(ideal_member(i, walk_word(a, flatten(p))));
    }
}

TEST_CASE("ideal_for_walk examples") {
    auto a = anbn_blind();
    auto r = ideal_for_walk_detailed(a, {0, 0, 1, 2, 2});
    CHECK(format_ideal(r.ideal) == "[a] [b]");
    CHECK(r.fixed == 0);
    CHECK_THROWS_AS(ideal_for_walk(a, {0, 1, 2, 2}), Error);

    // {ab}: the b loop has to be fixed to cancel the a step
    BlindAutomaton b(ab(), 1, 2);
    b.add(0, 0, {1}, 1);
    b.add(1, 1, {-1}, 1);
    b.set_final(1);
    auto s = ideal_for_walk_detailed(b, {0, 1});
    CHECK(format_ideal(s.ideal) == "a? b?");
    CHECK(s.fixed == 1);
}

TEST_CASE("ideal_for_walk lies between the walk and the closure") {
    Rng g(34);
    int checked = 0;
    for (int it = 0; it < 3000 && checked < 60; ++it) {
        auto a = random_blind(g, ab(), 1);
        const Walk w = random_walk(g, a, static_cast<std::size_t>(below(g, 10)));
        if (!is_accepting_walk(a, w)) continue;
        ++checked;
        auto r = ideal_for_walk_detailed(a, w);
        CHECK(ideal_member(r.ideal, walk_word(a, w)));
        for (std::size_t m = 1; m <= 3; ++m) CHECK(blind_closure_member(a, ideal_witness(r.ideal, m)));
        CHECK(BigInt(r.ideal.length()) <=
              walk_ideal_bound(static_cast<std::uint64_t>(a.num_states), static_cast<std::uint64_t>(a.k)));
        CHECK(r.height < static_cast<std::size_t>(a.num_states));
    }
    CHECK(checked == 60);
}

}  // TEST_SUITE
