#include "subword/decision.hpp"
#include "subword/gen.hpp"
#include "subword/text_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace subword;
using nlohmann::json;

namespace {

constexpr int kHolds = 0, kFails = 1, kError = 2;

json stats_json(const std::map<std::string, std::uint64_t>& s) {
    json j = json::object();
    for (const auto& [k, v] : s) j[k] = v;
    return j;
}

int report(const ModelRef& k, const Verdict& v, bool show_witness, bool as_json,
           const CrossReport* cross) {
    const Alphabet& x = model_alphabet(k);
    if (as_json) {
        json j;
        j["holds"] = v.holds;
        j["witness"] = v.witness ? json(format_witness(*v.witness, x)) : json(nullptr);
        j["witness_kind"] = v.witness ? json(v.witness->index() == 0 ? "word" : "ideal") : json(nullptr);
        j["strategy"] = v.strategy;
        j["stats"] = stats_json(v.stats);
        if (!v.direction.empty()) j["direction"] = v.direction;
        if (cross) {
            json rows = json::array();
            for (const auto& r : cross->rows)
                rows.push_back({{"strategy", r.strategy}, {"holds", r.holds}, {"seconds", r.seconds},
                                {"stats", stats_json(r.stats)}});
            j["cross_validation"] = rows;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (v.holds ? "holds" : "fails") << " (" << v.strategy << ")\n";
        if (!v.direction.empty()) std::cout << "direction: " << v.direction << "\n";
        if (show_witness && v.witness) {
            std::cout << (v.witness->index() == 0 ? "witness word: " : "witness ideal: ")
                      << format_witness(*v.witness, x) << "\n";
        }
        if (cross)
            for (const auto& r : cross->rows)
                std::cout << "  " << r.strategy << ": " << (r.holds ? "holds" : "fails") << " in " << r.seconds << "s\n";
    }
    return v.holds ? kHolds : kFails;
}

std::vector<Word> all_subwords(const std::vector<Word>& words, std::size_t maxlen) {
    std::set<Word, ShortlexLess> out;
    for (const auto& w : words) {
        std::set<Word> level{w};
        while (!level.empty()) {
            std::set<Word> next;
            for (const auto& u : level) {
                if (u.size() <= maxlen && !out.insert(u).second) continue;
                for (std::size_t i = 0; i < u.size(); ++i) {
                    Word v = u;
                    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                    next.insert(v);
                }
            }
            level = std::move(next);
        }
    }
    return {out.begin(), out.end()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(std::stoull(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subword closures of automata, counter automata and grammars"};
    app.require_subcommand(1, 1);

    std::string file, file_l, strategy = "auto";
    bool witness = false, cross = false, as_json = false, closure = false, literal = false;
    std::string mode = "B3";

    auto* dc = app.add_subcommand("dc", "print an NFA for the downward closure");
    dc->add_option("file", file)->required();
    dc->add_option("--mode", mode, "B1, B2 or B3 (counter automata)")->check(CLI::IsMember({"B1", "B2", "B3"}));
    dc->add_flag("--literal", literal, "arbitrary cycles in stack frames instead of simple ones");

    auto* dec = app.add_subcommand("decompose", "print the ideals of the downward closure");
    dec->add_option("file", file)->required();
    dec->add_flag("--json", as_json);

    CLI::App* inc = app.add_subcommand("include", "decide closure(K) inside closure(L)");
    CLI::App* eq = app.add_subcommand("equiv", "decide closure(K) = closure(L)");
    for (auto* c : {inc, eq}) {
        c->add_option("fileK", file)->required();
        c->add_option("fileL", file_l)->required();
        c->add_flag("--witness", witness, "print a witness on failure");
        c->add_option("--strategy", strategy, "auto, cfg-regular, dcnfa-product, ideal-witness, short-witness, sup-route");
        c->add_flag("--cross-validate", cross, "run every applicable strategy");
        c->add_flag("--json", as_json);
    }

    std::vector<std::string> order;
    auto* sup = app.add_subcommand("sup", "simultaneous unboundedness for a grammar inside a1* ... an*");
    sup->add_option("file", file)->required();
    sup->add_option("--order", order, "the letters a1 ... an")->required();

    std::vector<std::string> word;
    auto* mem = app.add_subcommand("member", "membership of a word (space-separated symbols)");
    mem->add_option("file", file)->required();
    mem->add_option("word", word, "symbols; nothing or 'eps' for the empty word");
    mem->add_flag("--closure", closure, "test the downward closure instead");

    std::string gen_kind, out_prefix, u_text, v_text, kind = "nfa";
    std::uint64_t t_value = 0, seed = 0;
    unsigned bits = 1;
    std::size_t n = 1;
    RandomParams params;
    auto* gen = app.add_subcommand("gen", "write generated models");
    gen->add_option("what", gen_kind)->required()->check(CLI::IsMember({"subset-sum", "pow2-cfg", "pow2-blind", "random"}));
    gen->add_option("--u", u_text, "subset sum: comma-separated u");
    gen->add_option("--v", v_text, "subset sum: comma-separated v");
    gen->add_option("--t", t_value, "subset sum: target");
    gen->add_option("--k", bits, "subset sum: bit width");
    gen->add_option("--n", n, "pow2: exponent");
    auto* seed_opt = gen->add_option("--seed", seed);
    gen->add_option("--kind", kind)->check(CLI::IsMember({"nfa", "blind", "ideal", "cfg"}));
    gen->add_option("--alphabet", params.alphabet);
    gen->add_option("--states", params.states);
    gen->add_option("--counters", params.counters);
    gen->add_option("--transitions", params.transitions);
    gen->add_option("--length", params.ideal_length);
    gen->add_option("--nonterminals", params.nonterminals);
    gen->add_option("--productions", params.productions);
    gen->add_option("--out", out_prefix, "file prefix; stdout when absent");

    std::size_t max_len = 6;
    int cbound = 8, ebound = 16;
    auto* orc = app.add_subcommand("oracle", "bounded enumeration of the language");
    orc->add_option("file", file)->required();
    orc->add_option("--max-len", max_len);
    orc->add_option("--counter-bound", cbound);
    orc->add_option("--eps-bound", ebound);
    orc->add_flag("--closure", closure, "enumerate the downward closure instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kError;
    }

    try {
        if (dc->parsed()) {
            const ModelRef m = load_model(file);
            if (auto* b = std::get_if<BlindModel>(&m)) {
                DcOptions o;
                o.mode = mode == "B1" ? DcMode::B1 : mode == "B2" ? DcMode::B2 : DcMode::B3;
                o.simple_frames = !literal;
                std::cout << serialize_nfa(dc_nfa(b->automaton, o));
                return kHolds;
            }
            auto a = to_dc_nfa(m);
            if (!a) {
                std::cerr << "error: grammars have no closure automaton route; use decompose or include instead\n";
                return kError;
            }
            std::cout << serialize_nfa(*a);
            return kHolds;
        }
        if (dec->parsed()) {
            const ModelRef m = load_model(file);
            auto ideals = closure_ideals(m);
            std::sort(ideals.begin(), ideals.end(), ideal_less);
            if (as_json) {
                json j = json::array();
                for (const auto& i : ideals) j.push_back(format_ideal(i));
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& i : ideals) std::cout << "seq: " << format_ideal(i) << "\n";
            }
            return kHolds;
        }
        if (inc->parsed() || eq->parsed()) {
            const ModelRef k = load_model(file), l = load_model(file_l);
            std::optional<CrossReport> rep;
            if (cross) {
                rep = cross_validate(k, l);
                if (eq->parsed()) cross_validate(l, k);
            }
            const Verdict v = inc->parsed() ? decide_inclusion(k, l, strategy) : decide_equivalence(k, l, strategy);
            return report(k, v, witness, as_json, rep ? &*rep : nullptr);
        }
        if (sup->parsed()) {
            const ModelRef m = load_model(file);
            auto* g = std::get_if<CfgModel>(&m);
            if (!g) throw Error("sup expects a @cfg file");
            std::vector<Letter> ord;
            for (const auto& s : order) ord.push_back(g->grammar.terminals.letter(s));
            const bool yes = sup_decide(g->grammar, ord);
            std::cout << (yes ? "unbounded" : "bounded") << "\n";
            return yes ? kHolds : kFails;
        }
        if (mem->parsed()) {
            const ModelRef m = load_model(file);
            std::string text;
            for (const auto& s : word) text += s + " ";
            const Word w = model_alphabet(m).parse_word(text);
            bool in;
            if (closure) {
                in = closure_member(m, w);
            } else if (auto* i = std::get_if<IdealModel>(&m)) {
                in = ideal_member(i->ideal, w);
            } else if (auto* a = std::get_if<NfaModel>(&m)) {
                in = accepts(a->nfa, w);
            } else if (auto* b = std::get_if<BlindModel>(&m)) {
                in = blind_member(b->automaton, w);
            } else {
                in = cyk_accepts(std::get<CfgModel>(m).grammar, w);
            }
            std::cout << (in ? "member" : "not a member") << "\n";
            return in ? kHolds : kFails;
        }
        if (gen->parsed()) {
            std::vector<std::pair<std::string, std::string>> files;
            if (gen_kind == "subset-sum") {
                SubsetSumInstance s{parse_list(u_text), parse_list(v_text), t_value, bits};
                auto g = gen_subset_sum(s);
                files = {{"-words.nfa", serialize_nfa(g.words)}, {"-automaton.blind", serialize_blind(g.automaton)}};
            } else if (gen_kind == "pow2-cfg") {
                files = {{".cfg", serialize_cfg(gen_pow2_cfg(n))}};
            } else if (gen_kind == "pow2-blind") {
                files = {{".blind", serialize_blind(gen_pow2_blind(n))}};
            } else {
                if (seed_opt->count() == 0) throw Error("gen random needs an explicit --seed");
                const ModelKind mk = kind == "nfa"     ? ModelKind::Nfa
                                     : kind == "blind" ? ModelKind::Blind
                                     : kind == "ideal" ? ModelKind::Ideal
                                                       : ModelKind::Cfg;
                files = {{"." + kind, serialize_model(gen_random(mk, seed, params))}};
            }
            for (const auto& [suffix, text] : files) {
                if (out_prefix.empty()) std::cout << text;
                else write_file(out_prefix + suffix, text);
            }
            return kHolds;
        }
        if (orc->parsed()) {
            const ModelRef m = load_model(file);
            const Alphabet& x = model_alphabet(m);
            std::vector<Word> words;
            if (auto* i = std::get_if<IdealModel>(&m)) {
                words = enumerate_upto(dfa_to_nfa(ordered_dfa(i->ideal)), max_len);
            } else if (auto* a = std::get_if<NfaModel>(&m)) {
                words = enumerate_upto(closure ? downward_close_nfa(a->nfa) : a->nfa, max_len);
            } else if (auto* b = std::get_if<BlindModel>(&m)) {
                words = enumerate_bounded(b->automaton, max_len, cbound, ebound);
                if (closure) words = all_subwords(words, max_len);
            } else {
                const auto& g = std::get<CfgModel>(m).grammar;
                words = enumerate_cfg_upto(closure ? downward_grammar(g) : g, max_len);
            }
            for (const auto& w : words) std::cout << x.format(w) << "\n";
            return kHolds;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
