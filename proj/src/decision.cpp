#include "subword/decision.hpp"

#include <algorithm>
#include <chrono>

namespace subword {

namespace {

template <class T>
const T* as(const ModelRef& m) {
    return std::get_if<T>(&m);
}

bool has_dc(const ModelRef& m) { return !as<CfgModel>(m); }

bool star_free(const Ideal& i) {
    return std::all_of(i.stars.begin(), i.stars.end(), [](LetterSet y) { return y == 0; });
}

std::size_t max_length(const std::vector<Ideal>& ideals) {
    std::size_t m = 0;
    for (const auto& i : ideals) m = std::max(m, i.length());
    return m;
}

// membership in the closure, with the expensive parts built once
class Closure {
public:
    explicit Closure(const ModelRef& m) : m_(m) {
        if (auto* n = as<NfaModel>(m)) dc_ = downward_close_nfa(n->nfa);
        if (auto* g = as<CfgModel>(m)) gd_ = downward_grammar(g->grammar);
    }
    bool operator()(const Word& w) const {
        if (auto* i = as<IdealModel>(m_)) return ideal_member(i->ideal, w);
        if (dc_) return accepts(*dc_, w);
        if (gd_) return cyk_accepts(*gd_, w);
        return blind_closure_member(std::get<BlindModel>(m_).automaton, w);
    }

private:
    const ModelRef& m_;
    std::optional<Nfa> dc_;
    std::optional<CnfGrammar> gd_;
};

struct Run {
    Verdict v;
    void fail(Witness w) {
        v.holds = false;
        v.witness = std::move(w);
    }
};

Verdict dcnfa_product(const ModelRef& k, const ModelRef& l) {
    Run r;
    r.v.strategy = "dcnfa-product";
    DcStats sk, sl;
    const Nfa a = *to_dc_nfa(k, &sk), b = *to_dc_nfa(l, &sl);
    r.v.stats["states"] = static_cast<std::uint64_t>(a.num_states + b.num_states);
    if (auto w = inclusion_counterexample(a, b)) r.fail(*w);
    return r.v;
}

Verdict cfg_regular(const ModelRef& k, const ModelRef& l) {
    Run r;
    r.v.strategy = "cfg-regular";
    const Nfa b = *to_dc_nfa(l);
    const Dfa d = determinize(b);
    r.v.stats["states"] = static_cast<std::uint64_t>(b.num_states + d.num_states);
    const CnfGrammar gd = downward_grammar(std::get<CfgModel>(k).grammar);
    if (auto w = cfg_regular_counterexample(gd, d)) r.fail(*w);
    return r.v;
}

// checks each ideal of k against l through one witness word
Verdict ideal_witness_route(const ModelRef& k, const ModelRef& l) {
    Run r;
    r.v.strategy = "ideal-witness";
    const auto ideals = closure_ideals(k);
    r.v.stats["ideals"] = ideals.size();
    const Closure member_l(l);
    std::optional<std::size_t> m;  // the witness exponent, once known
    auto exponent = [&]() {
        if (m) return *m;
        if (auto* n = as<NfaModel>(l)) m = static_cast<std::size_t>(n->nfa.num_states) + 1;
        else if (auto* j = as<IdealModel>(l)) m = j->ideal.length() + 1;
        else m = max_length(closure_ideals(l)) + 1;
        r.v.stats["exponent"] = *m;
        return *m;
    };
    for (const auto& i : ideals) {
        bool in;
        if (auto* j = as<IdealModel>(l)) {
            in = ideal_inclusion(i, j->ideal);
        } else {
            // star-free ideals have one maximal word, so any exponent works
            const std::size_t e = star_free(i) ? 1 : exponent();
            in = member_l(ideal_witness(i, e));
        }
        ++r.v.stats["words"];
        if (!in) {
            if (star_free(i)) r.fail(ideal_witness(i, 1));
            else r.fail(i);
            break;
        }
    }
    return r.v;
}

Verdict sup_route(const ModelRef& k, const ModelRef& l) {
    Run r;
    r.v.strategy = "sup-route";
    const auto& g = std::get<CfgModel>(l).grammar;
    const auto ideals = closure_ideals(k);
    r.v.stats["ideals"] = ideals.size();
    for (const auto& i : ideals)
        if (!ideal_in_cfg(i, g)) {
            r.fail(i);
            break;
        }
    return r.v;
}

Verdict short_witness(const ModelRef& k, const ModelRef& l) {
    Run r;
    r.v.strategy = "short-witness";
    const Closure member_k(k);
    WitnessSearch s;
    if (has_dc(l)) {
        const Nfa b = *to_dc_nfa(l);
        r.v.stats["states"] = static_cast<std::uint64_t>(b.num_states);
        s = find_short_witness(member_k, b, model_alphabet(k));
    } else {
        const Alphabet& x = model_alphabet(l);
        const BigInt bound = small_alphabet_bound(x.size(), max_length(closure_ideals(l)));
        if (bound > BigInt(resource_cap())) throw ResourceError("witness length bound exceeds the resource cap");
        r.v.stats["bound"] = static_cast<std::uint64_t>(bound);
        const Closure member_l(l);
        s = find_bounded_witness(member_k, member_l, x, static_cast<std::size_t>(bound));
    }
    r.v.stats["words"] = s.words_checked;
    if (s.witness) r.fail(*s.witness);
    return r.v;
}

}  // namespace

std::optional<Nfa> to_dc_nfa(const ModelRef& m, DcStats* stats) {
    if (auto* i = as<IdealModel>(m)) return dfa_to_nfa(ordered_dfa(i->ideal));
    if (auto* n = as<NfaModel>(m)) return downward_close_nfa(n->nfa);
    if (auto* b = as<BlindModel>(m)) return dc_nfa(b->automaton, {}, stats);
    return std::nullopt;
}

std::vector<Ideal> closure_ideals(const ModelRef& m) {
    if (auto* i = as<IdealModel>(m)) return {i->ideal};
    if (auto* g = as<CfgModel>(m)) return cfg_ideal_decomposition(g->grammar);
    return decompose_downward_closed(*to_dc_nfa(m));
}

bool closure_member(const ModelRef& m, const Word& w) { return Closure(m)(w); }

std::vector<std::string> applicable_strategies(const ModelRef& k, const ModelRef& l) {
    std::vector<std::string> s;
    if (!has_dc(k) && has_dc(l)) s.push_back("cfg-regular");
    if (has_dc(k) && has_dc(l)) s.push_back("dcnfa-product");
    s.push_back("ideal-witness");
    s.push_back("short-witness");
    if (!has_dc(l)) s.push_back("sup-route");
    return s;
}

std::string auto_strategy(const ModelRef& k, const ModelRef& l) {
    if (!has_dc(l)) return "sup-route";
    if (!has_dc(k)) return "cfg-regular";
    if (as<IdealModel>(k) && !as<BlindModel>(l)) return "ideal-witness";
    if (as<BlindModel>(l) && !as<BlindModel>(k)) {
        // exact membership beats building the closure automaton of l
        const auto ideals = closure_ideals(k);
        if (std::all_of(ideals.begin(), ideals.end(), star_free)) return "ideal-witness";
    }
    return "dcnfa-product";
}

Verdict decide_inclusion(const ModelRef& k, const ModelRef& l, const std::string& strategy) {
    require_same(model_alphabet(k), model_alphabet(l));
    const std::string s = strategy == "auto" ? auto_strategy(k, l) : strategy;
    const auto ok = applicable_strategies(k, l);
    if (std::find(ok.begin(), ok.end(), s) == ok.end()) {
        if (std::find(strategy_names().begin(), strategy_names().end(), s) == strategy_names().end())
            throw Error("unknown strategy '" + s + "'");
        throw Error("strategy '" + s + "' does not apply to " + model_kind(k) + " against " + model_kind(l));
    }
    if (s == "dcnfa-product") return dcnfa_product(k, l);
    if (s == "cfg-regular") return cfg_regular(k, l);
    if (s == "ideal-witness") return ideal_witness_route(k, l);
    if (s == "sup-route") return sup_route(k, l);
    return short_witness(k, l);
}

Verdict decide_equivalence(const ModelRef& k, const ModelRef& l, const std::string& strategy) {
    Verdict v = decide_inclusion(k, l, strategy);
    if (!v.holds) {
        v.direction = "left-to-right";
        return v;
    }
    Verdict back = decide_inclusion(l, k, strategy);
    for (const auto& [key, n] : v.stats) back.stats[key] += n;
    if (back.strategy != v.strategy) back.strategy = v.strategy + "," + back.strategy;
    if (!back.holds) back.direction = "right-to-left";
    return back;
}

std::optional<Word> find_word_witness(const ModelRef& k, const ModelRef& l) {
    require_same(model_alphabet(k), model_alphabet(l));
    const Verdict v = short_witness(k, l);
    if (v.holds) return std::nullopt;
    return std::get<Word>(*v.witness);
}

bool verify_witness(const ModelRef& k, const ModelRef& l, const Witness& w) {
    if (auto* word = std::get_if<Word>(&w)) return closure_member(k, *word) && !closure_member(l, *word);
    const ModelRef i = IdealModel{std::get<Ideal>(w)};
    return decide_inclusion(i, k).holds && !decide_inclusion(i, l).holds;
}

CrossReport cross_validate(const ModelRef& k, const ModelRef& l) {
    require_same(model_alphabet(k), model_alphabet(l));
    CrossReport rep;
    for (const auto& s : applicable_strategies(k, l)) {
        const auto t0 = std::chrono::steady_clock::now();
        const Verdict v = decide_inclusion(k, l, s);
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep.rows.push_back({s, v.holds, v.stats, dt});
    }
    std::sort(rep.rows.begin(), rep.rows.end(),
              [](const StrategyRow& a, const StrategyRow& b) { return a.strategy < b.strategy; });
    rep.holds = rep.rows.front().holds;
    for (const auto& r : rep.rows)
        if (r.holds != rep.holds)
            throw Error("strategies disagree: " + rep.rows.front().strategy + " vs " + r.strategy);
    return rep;
}

std::string format_witness(const Witness& w, const Alphabet& x) {
    if (auto* word = std::get_if<Word>(&w)) return x.format(*word);
    return format_ideal(std::get<Ideal>(w));
}

}  // namespace subword
