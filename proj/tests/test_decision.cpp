#include "corpus.hpp"
#include "subword/decision.hpp"
#include "subword/gen.hpp"

#include <doctest.h>

using namespace subword;
using namespace corpus;

namespace {

ModelRef ideal_model(const std::string& seq) { return IdealModel{normalize(parse_ideal_seq(seq, ab()))}; }
ModelRef nfa_model(const Nfa& a) { return NfaModel{a}; }
ModelRef cfg_model(const Cfg& c) { return CfgModel{to_cnf(c)}; }

// brute-force verdict on words up to maxlen
bool agrees_upto(const ModelRef& k, const ModelRef& l, std::size_t maxlen) {
    for (const auto& w : all_words(2, maxlen))
        if (closure_member(k, w) && !closure_member(l, w)) return false;
    return true;
}

}  // namespace

TEST_SUITE("decision") {

TEST_CASE("auto routing") {
    const ModelRef blind = BlindModel{anbn_blind()};
    const ModelRef cfg = cfg_model(anbn_cfg());
    const ModelRef nfa = nfa_model(star_nfa(ab(), {0}));
    CHECK(auto_strategy(blind, cfg) == "sup-route");
    CHECK(auto_strategy(cfg, nfa) == "cfg-regular");
    CHECK(auto_strategy(ideal_model("[a]"), nfa) == "ideal-witness");
    CHECK(auto_strategy(nfa, blind) == "dcnfa-product");
    CHECK(auto_strategy(nfa_model(finite_nfa(ab(), {{0, 1}})), blind) == "ideal-witness");
    CHECK(auto_strategy(blind, nfa) == "dcnfa-product");
    CHECK(applicable_strategies(cfg, cfg) == std::vector<std::string>{"ideal-witness", "short-witness", "sup-route"});
}

TEST_CASE("inclusion examples") {
    const ModelRef blind = BlindModel{anbn_blind()};
    const ModelRef abstar = ideal_model("[a] [b]");
    auto v = decide_inclusion(blind, abstar);
    CHECK(v.holds);
    CHECK(v.strategy == "dcnfa-product");
    auto back = decide_inclusion(abstar, blind);
    CHECK(back.holds);

    auto f = decide_inclusion(ideal_model("[a b]"), blind);
    CHECK_FALSE(f.holds);
    REQUIRE(f.witness);
    CHECK(verify_witness(ideal_model("[a b]"), blind, *f.witness));

    auto e = decide_equivalence(blind, cfg_model(anbn_cfg()));
    CHECK(e.holds);
    auto ne = decide_equivalence(cfg_model(anb_cfg()), blind);
    CHECK_FALSE(ne.holds);
    CHECK(ne.direction == "right-to-left");
    auto ne2 = decide_equivalence(blind, cfg_model(anb_cfg()));
    CHECK_FALSE(ne2.holds);
    CHECK(ne2.direction == "left-to-right");

    CHECK_THROWS_AS(decide_inclusion(blind, abstar, "sup-route"), Error);
    CHECK_THROWS_AS(decide_inclusion(blind, abstar, "nope"), Error);
    CHECK_THROWS_AS(decide_inclusion(blind, IdealModel{normalize(parse_ideal_seq("[a]", abc()))}), AlphabetMismatch);
}

TEST_CASE("word witnesses") {
    const ModelRef k = nfa_model(finite_nfa(ab(), {{0, 1, 0}}));
    const ModelRef l = BlindModel{anbn_blind()};
    auto w = find_word_witness(k, l);
    REQUIRE(w);
    CHECK(*w == Word{1, 0});
    CHECK(verify_witness(k, l, *w));
    CHECK_FALSE(find_word_witness(l, ideal_model("[a] [b]")));
    CHECK(format_witness(*w, ab()) == "b a");
}

TEST_CASE("strategies agree on random pairs") {
    Rng g(61);
    for (int it = 0; it < 60; ++it) {
        Alphabet x = ab();
        std::vector<ModelRef> models{nfa_model(random_nfa(g, x, 1 + below(g, 3), 2 + below(g, 5))),
                                     BlindModel{random_blind(g, x, 1)}, IdealModel{random_ideal(g, x, 2)},
                                     cfg_model(random_cfg(g, x, 1 + below(g, 2), 1 + below(g, 4)))};
        const auto& k = models[static_cast<std::size_t>(below(g, 4))];
        const auto& l = models[static_cast<std::size_t>(below(g, 4))];
        CrossReport r;
        REQUIRE_NOTHROW(r = cross_validate(k, l));
        auto v = decide_inclusion(k, l);
        CHECK(v.holds == r.holds);
        if (v.holds) CHECK(agrees_upto(k, l, 4));
        else {
            REQUIRE(v.witness);
            CHECK(verify_witness(k, l, *v.witness));
        }
    }
}

TEST_CASE("subset-sum gadget") {
    SubsetSumInstance yes{{1, 2}, {1, 1}, 3, 2};
    CHECK(subset_sum_oracle(yes) == false);
    SubsetSumInstance all{{1, 2}, {1, 2}, 3, 2};
    CHECK(subset_sum_oracle(all));
    for (const auto& inst : {yes, all}) {
        auto gd = gen_subset_sum(inst);
        const ModelRef k = NfaModel{gd.words}, l = BlindModel{gd.automaton};
        auto v = decide_inclusion(k, l);
        CHECK(v.holds == subset_sum_oracle(inst));
        if (!v.holds) {
            REQUIRE(v.witness);
            REQUIRE(std::holds_alternative<Word>(*v.witness));
            CHECK(verify_witness(k, l, *v.witness));
        }
    }
}

}  // TEST_SUITE
