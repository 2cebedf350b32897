#include "corpus.hpp"

#include <doctest.h>

using namespace subword;
using namespace corpus;

namespace {

Ideal ideal(const std::string& seq, const Alphabet& x) { return normalize(parse_ideal_seq(seq, x)); }

}  // namespace

TEST_SUITE("ideal_algebra") {

TEST_CASE("length and expression length") {
    Alphabet x = abc();
    auto e = parse_ideal_seq("[a b]", x);
    CHECK(expr_length(e) == 1);
    CHECK(normalize(e).length() == 0);
    CHECK(ideal("a? [b] c?", x).length() == 2);
}

TEST_CASE("normalize never lengthens and keeps the language") {
    Rng g(11);
    Alphabet x = abc();
    for (int it = 0; it < 200; ++it) {
        IdealExpr e{x, {}};
        const int atoms = below(g, 6);
        for (int i = 0; i < atoms; ++i) {
            if (g() % 2) e.atoms.push_back(IdealAtom::star_of(static_cast<LetterSet>(g() % 8)));
            else e.atoms.push_back(IdealAtom::optional(below(g, 3)));
        }
        const Ideal n = normalize(e);
        CHECK(n.length() <= expr_length(e));
        // the expression itself, read as a product
        Nfa a(x, 1);
        int q = 0;
        for (const auto& atom : e.atoms) {
            int r = a.add_state();
            if (atom.star) {
                a.add(q, EPS, r);
                for (Letter l = 0; l < 3; ++l)
                    if (has(atom.set, l)) a.add(r, l, r);
            } else {
                a.add(q, atom.letter, r);
                a.add(q, EPS, r);
            }
            q = r;
        }
        a.set_final(q);
        for (const auto& w : all_words(3, 4)) REQUIRE(accepts(a, w) == ideal_member(n, w));
    }
}

TEST_CASE("canonical_word") {
    Alphabet x = abc();
    CHECK(canonical_word(0b011, x) == x.parse_word("a b"));
    CHECK(canonical_word(0, x).empty());
    CHECK(canonical_word(0b100, x) == x.parse_word("c"));
}

TEST_CASE("ideal_witness") {
    Alphabet x = abc();
    CHECK(ideal_witness(ideal("[a]", x), 2) == x.parse_word("a a"));
    CHECK(ideal_witness(ideal("[a] b?", x), 2) == x.parse_word("a a b"));
    CHECK(ideal_witness(ideal("[a b] c? [a]", x), 3) == x.parse_word("a b a b a b c a a a"));
}

TEST_CASE("ordered_dfa") {
    Alphabet a1({"a"});
    Dfa d = ordered_dfa(ideal("[a]", a1));
    CHECK(d.num_states == 2);
    CHECK(d.next(0, 0) == 0);
    CHECK(d.order_valid());

    Alphabet x = ab();
    Dfa e = ordered_dfa(ideal("a?", x));
    CHECK(e.num_states == 3);
    CHECK(e.next(0, 0) == 1);
    CHECK(e.next(0, 1) == 2);
    CHECK(e.finals == std::vector<bool>{true, true, false});
}

TEST_CASE("ordered_dfa agrees with membership") {
    Rng g(12);
    for (int it = 0; it < 100; ++it) {
        Alphabet x = below(g, 2) ? ab() : abc();
        Ideal i = random_ideal(g, x, 3);
        Dfa d = ordered_dfa(i);
        CHECK(d.num_states == static_cast<int>(i.length()) + 2);
        CHECK(d.order_valid());
        for (const auto& w : all_words(x.size(), 5)) REQUIRE(accepts(d, w) == ideal_member(i, w));
        for (std::size_t m = 1; m <= 3; ++m) CHECK(ideal_member(i, ideal_witness(i, m)));
    }
}

TEST_CASE("ideal_member") {
    Alphabet x = abc();
    CHECK(ideal_member(ideal("[a]", x), x.parse_word("a a a")));
    CHECK_FALSE(ideal_member(ideal("a? b?", x), x.parse_word("b a")));
    CHECK_FALSE(ideal_member(ideal("[a b] c?", x), x.parse_word("a b c a b")));
}

TEST_CASE("ideal_inclusion") {
    Alphabet x = ab();
    Ideal i = ideal("[a] b? [b]", x);
    CHECK(ideal_inclusion(i, i));
    CHECK(ideal_inclusion(ideal("[a]", x), ideal("[a b]", x)));
    CHECK_FALSE(ideal_inclusion(ideal("a? b?", x), ideal("[a]", x)));
}

TEST_CASE("ideal_inclusion matches automaton inclusion") {
    Rng g(13);
    for (int it = 0; it < 200; ++it) {
        Alphabet x = below(g, 2) ? ab() : abc();
        Ideal i = random_ideal(g, x, 3), j = random_ideal(g, x, 3);
        CHECK(ideal_inclusion(i, j) == nfa_inclusion(dfa_to_nfa(ordered_dfa(i)), dfa_to_nfa(ordered_dfa(j))));
    }
}

TEST_CASE("decompose_downward_closed") {
    Alphabet x = ab();
    auto d1 = decompose_downward_closed(downward_close_nfa(finite_nfa(x, {x.parse_word("a b")})));
    REQUIRE(d1.size() == 1);
    CHECK(format_ideal(d1[0]) == "a? b?");

    auto d2 = decompose_downward_closed(star_nfa(x, {0, 1}));
    REQUIRE(d2.size() == 1);
    CHECK(format_ideal(d2[0]) == "[a b]");

    Nfa u(x, 3);
    u.add(0, EPS, 1);
    u.add(0, EPS, 2);
    u.add(1, 0, 1);
    u.add(2, 1, 2);
    u.set_final(1);
    u.set_final(2);
    auto d3 = decompose_downward_closed(u);
    REQUIRE(d3.size() == 2);
    CHECK(format_ideal(d3[0]) == "[a]");
    CHECK(format_ideal(d3[1]) == "[b]");

    CHECK_THROWS_AS(decompose_downward_closed(finite_nfa(x, {x.parse_word("a b")})), Error);
}

TEST_CASE("decomposition covers random closures") {
    Rng g(14);
    for (int it = 0; it < 60; ++it) {
        Alphabet x = ab();
        Nfa a = downward_close_nfa(random_nfa(g, x, 1 + below(g, 4), 2 + below(g, 6)));
        auto ideals = decompose_downward_closed(a);
        Nfa u = union_nfa(ideals, x);
        CHECK(nfa_inclusion(a, u));
        CHECK(nfa_inclusion(u, a));
        for (std::size_t i = 0; i < ideals.size(); ++i) {
            CHECK(ideals[i].length() <= static_cast<std::size_t>(a.num_states));
            for (std::size_t j = 0; j < ideals.size(); ++j)
                if (i != j) CHECK_FALSE(ideal_inclusion(ideals[i], ideals[j]));
        }
    }
}

TEST_CASE("small_alphabet_bound and f_bound") {
    CHECK(small_alphabet_bound(1, 1) == 2);
    CHECK(small_alphabet_bound(2, 1) == 8);
    CHECK(small_alphabet_bound(2, 3) == 32);
    for (std::uint64_t n = 1; n <= 6; ++n) CHECK(f_bound(n, 1) == n - 1);
    CHECK(f_bound(3, 2) == 6);
    for (std::uint64_t k = 0; k <= 6; ++k) CHECK(f_bound(2, k) == k);
    for (std::uint64_t n = 1; n <= 6; ++n)
        for (std::uint64_t k = 1; k <= 6; ++k) {
            BigInt p = 1;
            for (std::uint64_t i = 0; i < k; ++i) p *= (n - 1);
            CHECK(f_bound(n, k) <= BigInt(k) * p);
        }
}

TEST_CASE("verify_cycling") {
    CHECK(verify_cycling({0, 0, 0}, 2, 1));
    CHECK_NOTHROW(verify_cycling({0}, 3, 1));
    Rng g(15);
    for (int it = 0; it < 10; ++it) CHECK(verify_cycling(random_word(g, 2, 9), 2, 2));
    CHECK_THROWS_AS(verify_cycling({0}, 4, 2), Error);
}

}  // TEST_SUITE
