#include "corpus.hpp"

#include <doctest.h>

using namespace subword;
using namespace corpus;

namespace {

Ideal ideal(const std::string& seq, const Alphabet& x) { return normalize(parse_ideal_seq(seq, x)); }

// a^n b^m
Cfg anbm_cfg() {
    Cfg g;
    g.terminals = ab();
    g.start = g.add_nonterminal("S");
    const int b = g.add_nonterminal("B");
    g.productions.push_back({0, {{true, 0}, {false, 0}}});
    g.productions.push_back({0, {{false, b}}});
    g.productions.push_back({b, {{true, 1}, {false, b}}});
    g.productions.push_back({b, {}});
    return g;
}

Cfg word_cfg(const Alphabet& x, const Word& w) {
    Cfg g;
    g.terminals = x;
    g.start = g.add_nonterminal("S");
    Production p{0, {}};
    for (Letter l : w) p.body.push_back({true, l});
    g.productions.push_back(p);
    return g;
}

}  // namespace

TEST_SUITE("grammar") {

TEST_CASE("to_cnf and cyk") {
    Alphabet x = ab();
    auto g = to_cnf(anbn_cfg());
    CHECK(cyk_accepts(g, {}));
    CHECK(cyk_accepts(g, x.parse_word("a a b b")));
    CHECK_FALSE(cyk_accepts(g, x.parse_word("a b b")));
    CHECK(enumerate_cfg_upto(g, 4) == std::vector<Word>{{}, {0, 1}, {0, 0, 1, 1}});
    CHECK(nullable(g)[static_cast<std::size_t>(g.start)]);

    Cfg none;
    none.terminals = x;
    none.start = none.add_nonterminal("S");
    none.productions.push_back({0, {{false, 0}, {true, 0}}});
    auto e = to_cnf(none);
    CHECK(e.empty);
    CHECK(enumerate_cfg_upto(e, 3).empty());
}

TEST_CASE("to_cnf keeps the language of random grammars") {
    Rng g(41);
    for (int it = 0; it < 150; ++it) {
        Cfg c = random_cfg(g, ab(), 1 + below(g, 3), 1 + below(g, 6));
        auto n = to_cnf(c);
        for (const auto& w : all_words(2, 5)) REQUIRE(cyk_accepts(n, w) == cfg_derives(c, w));
        CHECK(to_cnf(to_cfg(n)).empty == n.empty);
        for (const auto& w : all_words(2, 4)) CHECK(cyk_accepts(to_cnf(to_cfg(n)), w) == cyk_accepts(n, w));
    }
}

TEST_CASE("downward_grammar is the closure") {
    Alphabet x = ab();
    auto d = downward_grammar(to_cnf(anbn_cfg()));
    for (const auto& w : all_words(2, 5)) CHECK(cyk_accepts(d, w) == std::is_sorted(w.begin(), w.end()));

    Rng g(42);
    for (int it = 0; it < 150; ++it) {
        Cfg c = random_cfg(g, ab(), 1 + below(g, 3), 1 + below(g, 6));
        auto dn = downward_grammar(to_cnf(c));
        for (const auto& w : all_words(2, 4)) REQUIRE(cyk_accepts(dn, w) == cfg_derives(c, w, true));
    }
}

TEST_CASE("sentential_member and pump sets") {
    auto g = downward_grammar(to_cnf(anbn_cfg()));
    const int s = g.start;
    CHECK(sentential_member(g, s, {{true, 0}, {false, s}, {true, 1}}));
    CHECK(sentential_member(g, s, {{true, 0}, {false, s}}));
    CHECK(sentential_member(g, s, {{false, s}}));
    CHECK_FALSE(sentential_member(g, s, {{true, 1}, {false, s}}));
    auto p = compute_pump_sets(g);
    auto has = [](const std::vector<int>& v, int a) { return std::find(v.begin(), v.end(), a) != v.end(); };
    CHECK(has(p.left[0], s));
    CHECK(has(p.right[1], s));
    CHECK_FALSE(has(p.left[1], s));
    CHECK_FALSE(has(p.right[0], s));
}

TEST_CASE("block_dfa") {
    Alphabet x = abc();
    Dfa d = block_dfa(x, {0, 1});
    CHECK(accepts(d, x.parse_word("a a b")));
    CHECK(accepts(d, {}));
    CHECK_FALSE(accepts(d, x.parse_word("b a")));
    CHECK_FALSE(accepts(d, x.parse_word("c")));
    CHECK_THROWS_AS(block_dfa(x, {0, 0}), Error);
}

TEST_CASE("sup_decide") {
    CHECK(sup_decide(to_cnf(anbn_cfg()), {0, 1}));
    CHECK(sup_decide(to_cnf(anbm_cfg()), {0, 1}));
    CHECK_FALSE(sup_decide(to_cnf(anb_cfg()), {0, 1}));
    CHECK_THROWS_AS(sup_decide(to_cnf(anb_cfg()), {0, 1, 0}), Error);
    Alphabet x = ab();
    CHECK_FALSE(sup_decide(to_cnf(word_cfg(x, x.parse_word("a a b"))), {0, 1}));
    CHECK_THROWS_AS(sup_decide(to_cnf(word_cfg(x, x.parse_word("b a"))), {0, 1}), Error);

    Alphabet a1({"a"});
    Cfg finite = word_cfg(a1, {0, 0, 0, 0});
    CHECK_FALSE(sup_decide(to_cnf(finite), {0}));
}

TEST_CASE("omega_grammar marks pumpable letters") {
    auto g = downward_grammar(to_cnf(anbn_cfg()));
    Cfg o = omega_grammar(g, {0, 1});
    CHECK(o.terminals.size() == 2);
    CHECK(o.terminals.symbol(0) == "a^w");
    auto c = to_cnf(o);
    CHECK(cyk_accepts(c, {0, 1}));
}

TEST_CASE("cfg_regular_counterexample") {
    Alphabet x = ab();
    auto g = to_cnf(anbn_cfg());
    auto w = cfg_regular_counterexample(g, determinize(star_nfa(x, {0})));
    REQUIRE(w);
    CHECK(*w == x.parse_word("a b"));
    auto dw = cfg_regular_counterexample(downward_grammar(g), determinize(star_nfa(x, {0})));
    REQUIRE(dw);
    CHECK(*dw == x.parse_word("b"));
    CHECK(cfg_regular_inclusion(downward_grammar(g), block_dfa(x, {0, 1})));
    CHECK_FALSE(cfg_regular_inclusion(downward_grammar(g), block_dfa(x, {1, 0})));
}

TEST_CASE("cfg_regular_counterexample is shortest") {
    Rng g(43);
    for (int it = 0; it < 100; ++it) {
        Alphabet x = ab();
        auto c = to_cnf(random_cfg(g, x, 1 + below(g, 3), 1 + below(g, 6)));
        const Dfa d = determinize(random_nfa(g, x, 1 + below(g, 3), 2 + below(g, 5)));
        auto w = cfg_regular_counterexample(c, d);
        const std::size_t limit = w ? w->size() : 6;
        std::optional<Word> shortest;
        for (const auto& u : enumerate_cfg_upto(c, limit))
            if (!accepts(d, u)) {
                shortest = u;
                break;
            }
        CHECK(w.has_value() == shortest.has_value());
        if (w) {
            CHECK(cyk_accepts(c, *w));
            CHECK_FALSE(accepts(d, *w));
            CHECK(shortest->size() == w->size());
        }
    }
}

TEST_CASE("ideal_in_cfg") {
    Alphabet x = ab();
    auto g = to_cnf(anbn_cfg());
    CHECK(ideal_in_cfg(ideal("[a] [b]", x), g));
    CHECK(ideal_in_cfg(ideal("a? b? a?", x), g) == false);
    CHECK_FALSE(ideal_in_cfg(ideal("[a b]", x), g));
    CHECK(ideal_in_cfg(ideal("a? a? b?", x), g));
    CHECK_FALSE(ideal_in_cfg(ideal("b? a?", x), g));
    auto f = to_cnf(anb_cfg());
    CHECK(ideal_in_cfg(ideal("[a] b?", x), f));
    CHECK_FALSE(ideal_in_cfg(ideal("[a] [b]", x), f));
}

TEST_CASE("ideal_in_cfg agrees with witness membership") {
    Rng g(44);
    for (int it = 0; it < 80; ++it) {
        Alphabet x = ab();
        Cfg raw = random_cfg(g, x, 1 + below(g, 3), 1 + below(g, 6));
        auto c = to_cnf(raw);
        const Ideal i = random_ideal(g, x, 2);
        const bool in = ideal_in_cfg(i, c);
        // inclusion implies every witness is in the closure; a short failing witness refutes it
        if (in)
            for (std::size_t m = 1; m <= 3; ++m) CHECK(cfg_derives(raw, ideal_witness(i, m), true));
        if (!cfg_derives(raw, ideal_witness(i, 1), true)) CHECK_FALSE(in);
    }
}

TEST_CASE("cfg_ideal_decomposition") {
    Alphabet x = ab();
    auto d = cfg_ideal_decomposition(to_cnf(anbn_cfg()));
    REQUIRE(d.size() == 1);
    CHECK(format_ideal(d[0]) == "[a] [b]");
    auto e = cfg_ideal_decomposition(to_cnf(anb_cfg()));
    REQUIRE(e.size() == 1);
    CHECK(format_ideal(e[0]) == "[a] b?");

    Rng g(45);
    for (int it = 0; it < 40; ++it) {
        Cfg raw = random_cfg(g, x, 1 + below(g, 3), 1 + below(g, 5));
        auto ideals = cfg_ideal_decomposition(to_cnf(raw));
        const Nfa u = union_nfa(ideals, x);
        for (const auto& w : all_words(2, 4)) CHECK(accepts(u, w) == cfg_derives(raw, w, true));
    }
}

TEST_CASE("nfa_to_cfg") {
    Rng g(46);
    for (int it = 0; it < 60; ++it) {
        Nfa a = random_nfa(g, ab(), 1 + below(g, 4), 2 + below(g, 6));
        Cfg c = nfa_to_cfg(a);
        CHECK(c.nonterminals[0] == "Q0");
        for (const auto& w : all_words(2, 5)) REQUIRE(cfg_derives(c, w) == accepts(a, w));
    }
}

}  // TEST_SUITE
