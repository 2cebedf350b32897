#include "corpus.hpp"

#include <doctest.h>

using namespace subword;
using namespace corpus;

TEST_SUITE("core_automata") {

TEST_CASE("is_subword") {
    Alphabet x = abc();
    CHECK(is_subword({}, x.parse_word("a b c")));
    CHECK(is_subword(x.parse_word("a b"), x.parse_word("a c b")));
    CHECK_FALSE(is_subword(x.parse_word("b a"), x.parse_word("a b")));
}

TEST_CASE("alphabet rejects duplicates and reserved symbols") {
    CHECK_THROWS_AS(Alphabet({"a", "a"}), ParseError);
    CHECK_THROWS_AS(Alphabet({"eps"}), ParseError);
}

TEST_CASE("downward_close_nfa") {
    Alphabet x = ab();
    Nfa word = finite_nfa(x, {x.parse_word("a b")});
    auto got = as_set(enumerate_upto(downward_close_nfa(word), 4));
    CHECK(got == std::set<Word>{{}, {0}, {1}, {0, 1}});
    CHECK(downward_close_nfa(word).num_states == word.num_states);

    Nfa none(x, 2);
    none.add(0, 0, 1);
    CHECK(is_empty(downward_close_nfa(none)));

    Nfa abstar(x, 2);
    abstar.add(0, 0, 1);
    abstar.add(1, 1, 0);
    abstar.set_final(0);
    CHECK(enumerate_upto(downward_close_nfa(abstar), 6).size() == all_words(2, 6).size());
}

TEST_CASE("product, emptiness, acceptance") {
    Alphabet x = ab();
    auto both = intersect(star_nfa(x, {0}), star_nfa(x, {1}));
    CHECK(as_set(enumerate_upto(both, 4)) == std::set<Word>{{}});
    Nfa nofinal(x, 1);
    nofinal.add(0, 0, 0);
    CHECK(is_empty(nofinal));
    Nfa abstar(x, 2);
    abstar.add(0, 0, 1);
    abstar.add(1, 1, 0);
    abstar.set_final(0);
    CHECK(accepts(abstar, x.parse_word("a b a b")));
    CHECK_FALSE(accepts(abstar, x.parse_word("a b a")));
    CHECK_THROWS_AS(intersect(abstar, star_nfa(abc(), {0})), AlphabetMismatch);
}

TEST_CASE("nfa_inclusion") {
    Alphabet x = ab();
    Nfa word = finite_nfa(x, {x.parse_word("a b")});
    Nfa all = star_nfa(x, {0, 1});
    CHECK(nfa_inclusion(word, all));
    CHECK_FALSE(nfa_inclusion(star_nfa(x, {0}), word));
    Nfa abstar(x, 2);
    abstar.add(0, 0, 1);
    abstar.add(1, 1, 0);
    abstar.set_final(0);
    CHECK(nfa_inclusion(downward_close_nfa(abstar), all));
}

TEST_CASE("enumerate_upto") {
    Alphabet x = ab();
    CHECK(enumerate_upto(star_nfa(x, {0}), 2) == std::vector<Word>{{}, {0}, {0, 0}});
    CHECK(enumerate_upto(finite_nfa(x, {x.parse_word("a b")}), 1).empty());
    CHECK(enumerate_upto(downward_close_nfa(finite_nfa(x, {x.parse_word("a b")})), 2) ==
          std::vector<Word>{{}, {0}, {1}, {0, 1}});
}

TEST_CASE("subset_reject_dfa") {
    Alphabet x = ab();
    Nfa eps(x, 1);
    eps.set_final(0);
    Dfa d = subset_reject_dfa(eps);
    for (const auto& w : all_words(2, 4)) CHECK(accepts(d, w) == !w.empty());

    CHECK(is_empty(dfa_to_nfa(subset_reject_dfa(star_nfa(x, {0, 1})))));

    Nfa word = finite_nfa(x, {x.parse_word("a b")});
    Dfa r = subset_reject_dfa(word);
    std::set<Word> rejected;
    for (const auto& w : all_words(2, 4))
        if (!accepts(r, w)) rejected.insert(w);
    CHECK(rejected == std::set<Word>{{}, {0}, {1}, {0, 1}});
}

TEST_CASE("find_short_witness") {
    Alphabet x = ab();
    Nfa all = star_nfa(x, {0, 1});
    auto in_ab = [&](const Word& w) { return is_subword(w, x.parse_word("a b")); };
    CHECK_FALSE(find_short_witness(in_ab, all, x).witness);

    auto in_a = [&](const Word& w) { return is_subword(w, x.parse_word("a")); };
    auto r = find_short_witness(in_a, star_nfa(x, {1}), x);
    REQUIRE(r.witness);
    CHECK(*r.witness == x.parse_word("a"));

    // closure of (ab)* against closure of {abab}: 5 states, shortest witness aaa
    Nfa abab = finite_nfa(x, {x.parse_word("a b a b")});
    auto in_star = [](const Word&) { return true; };
    auto s = find_short_witness(in_star, abab, x);
    REQUIRE(s.witness);
    CHECK(*s.witness == x.parse_word("a a a"));
    CHECK(s.witness->size() <= static_cast<std::size_t>(abab.num_states) + 1);
}

TEST_CASE("closure automaton matches subword enumeration") {
    Rng g(101);
    for (int it = 0; it < 40; ++it) {
        Alphabet x = ab();
        Nfa a = random_nfa(g, x, 1 + below(g, 3), 2 + below(g, 6));
        const Nfa d = downward_close_nfa(a);
        // a word of length 3 embeds into an accepted word with at most 2 letters around each embedded one
        const auto sub = subwords_upto(enumerate_upto(a, 11), 3);
        for (const auto& w : all_words(2, 3)) CHECK(accepts(d, w) == (sub.count(w) > 0));
    }
}

TEST_CASE("subset_reject_dfa agrees with complemented closure") {
    Rng g(202);
    for (int it = 0; it < 40; ++it) {
        Alphabet x = ab();
        Nfa a = random_nfa(g, x, 1 + below(g, 4), 2 + below(g, 6));
        const Dfa r = subset_reject_dfa(a);
        const Dfa c = complement(determinize(downward_close_nfa(a)));
        for (const auto& w : all_words(2, static_cast<std::size_t>(a.num_states) + 2))
            REQUIRE(accepts(r, w) == accepts(c, w));
    }
}

TEST_CASE("short witness absent exactly on inclusion") {
    Rng g(303);
    for (int it = 0; it < 60; ++it) {
        Alphabet x = ab();
        Nfa k = random_nfa(g, x, 1 + below(g, 3), 2 + below(g, 5));
        Nfa l = random_nfa(g, x, 1 + below(g, 3), 2 + below(g, 5));
        const Nfa dk = downward_close_nfa(k), dl = downward_close_nfa(l);
        auto member = [&](const Word& w) { return accepts(dk, w); };
        auto r = find_short_witness(member, l, x);
        const bool incl = nfa_inclusion_reference(dk, dl);
        CHECK(incl == !r.witness);
        CHECK(nfa_inclusion(dk, dl) == incl);
        if (r.witness) {
            CHECK(accepts(dk, *r.witness));
            CHECK_FALSE(accepts(dl, *r.witness));
            CHECK(r.witness->size() <= static_cast<std::size_t>(l.num_states) + 1);
        }
    }
}

TEST_CASE("De Morgan on enumerations") {
    Rng g(404);
    for (int it = 0; it < 30; ++it) {
        Alphabet x = ab();
        Nfa a = random_nfa(g, x, 1 + below(g, 3), 2 + below(g, 5));
        Nfa b = random_nfa(g, x, 1 + below(g, 3), 2 + below(g, 5));
        const Dfa ca = complement(determinize(a)), cb = complement(determinize(b));
        const Nfa both = intersect(a, b);
        const Nfa neither = intersect(dfa_to_nfa(ca), dfa_to_nfa(cb));
        for (const auto& w : all_words(2, 5)) {
            CHECK(accepts(both, w) == (accepts(a, w) && accepts(b, w)));
            CHECK(accepts(neither, w) == !(accepts(a, w) || accepts(b, w)));
            CHECK(accepts(ca, w) == !accepts(a, w));
        }
    }
}

}  // TEST_SUITE
