#include "subword/text_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace subword {

const Alphabet& model_alphabet(const ModelRef& m) {
    return std::visit(
        [](const auto& x) -> const Alphabet& {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, IdealModel>) return x.ideal.ambient;
            else if constexpr (std::is_same_v<T, NfaModel>) return x.nfa.alphabet;
            else if constexpr (std::is_same_v<T, BlindModel>) return x.automaton.alphabet;
            else return x.grammar.terminals;
        },
        m);
}

std::string model_kind(const ModelRef& m) {
    static const char* names[] = {"ideal", "nfa", "blind", "cfg"};
    return names[m.index()];
}

namespace {

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

std::string trim_ws(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + v[i];
    return out;
}

struct Line {
    std::size_t number;
    std::string key, value;
};

struct Document {
    std::string kind;
    std::string params;
    std::vector<Line> lines;
};

Document split(const std::string& text) {
    Document d;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::string s = trim_ws(raw);
        if (s.empty()) continue;
        if (d.kind.empty()) {
            if (s[0] != '@') throw ParseError("line " + std::to_string(number) + ": expected a @kind header");
            auto sp = s.find_first_of(" \t");
            d.kind = s.substr(1, sp == std::string::npos ? std::string::npos : sp - 1);
            d.params = sp == std::string::npos ? "" : trim_ws(s.substr(sp));
            continue;
        }
        auto colon = s.find(':');
        if (colon == std::string::npos) throw ParseError("line " + std::to_string(number) + ": expected 'key: value'");
        d.lines.push_back({number, trim_ws(s.substr(0, colon)), trim_ws(s.substr(colon + 1))});
    }
    if (d.kind.empty()) throw ParseError("empty model file");
    return d;
}

[[noreturn]] void fail(const Line& l, const std::string& msg) {
    throw ParseError("line " + std::to_string(l.number) + ": " + msg);
}

void expect_kind(const Document& d, const std::string& kind) {
    if (d.kind != kind) throw ParseError("expected @" + kind + " header, found @" + d.kind);
}

// shared by @nfa and @blind
struct AutomatonText {
    Alphabet alphabet;
    std::vector<std::string> states;
    std::map<std::string, int> index;
    int initial = -1;
    std::vector<int> finals;
    std::vector<const Line*> trans;
};

AutomatonText automaton_text(const Document& d, const std::string& alphabet_key) {
    AutomatonText a;
    bool have_alphabet = false;
    std::vector<const Line*> finals;
    const Line* initial = nullptr;
    for (const auto& l : d.lines) {
        if (l.key == alphabet_key) {
            a.alphabet = Alphabet(tokens(l.value));
            have_alphabet = true;
        } else if (l.key == "states") {
            for (const auto& s : tokens(l.value)) {
                if (!a.index.emplace(s, static_cast<int>(a.states.size())).second) fail(l, "duplicate state '" + s + "'");
                a.states.push_back(s);
            }
        } else if (l.key == "initial") {
            initial = &l;
        } else if (l.key == "final") {
            finals.push_back(&l);
        } else if (l.key == "trans") {
            a.trans.push_back(&l);
        } else {
            fail(l, "unknown key '" + l.key + "'");
        }
    }
    if (!have_alphabet) throw ParseError("missing '" + alphabet_key + ":' line");
    if (a.states.empty()) throw ParseError("missing 'states:' line");
    auto state = [&](const Line& l, const std::string& s) {
        auto it = a.index.find(s);
        if (it == a.index.end()) fail(l, "undeclared state '" + s + "'");
        return it->second;
    };
    if (!initial) throw ParseError("missing 'initial:' line");
    auto it = tokens(initial->value);
    if (it.size() != 1) fail(*initial, "exactly one initial state expected");
    a.initial = state(*initial, it[0]);
    for (const auto* l : finals)
        for (const auto& s : tokens(l->value)) a.finals.push_back(state(*l, s));
    return a;
}

Letter label_of(const Line& l, const Alphabet& x, const std::string& s) {
    if (s == "eps") return EPS;
    if (!x.contains(s)) fail(l, "symbol '" + s + "' not in alphabet");
    return x.letter(s);
}

}  // namespace

Nfa parse_nfa(const std::string& text) {
    const Document d = split(text);
    expect_kind(d, "nfa");
    if (!d.params.empty()) throw ParseError("@nfa takes no parameters");
    auto t = automaton_text(d, "alphabet");
    Nfa a(t.alphabet, static_cast<int>(t.states.size()));
    a.names = t.states;
    a.initial = t.initial;
    for (int f : t.finals) a.set_final(f);
    for (const auto* l : t.trans) {
        auto tok = tokens(l->value);
        if (tok.size() != 3) fail(*l, "expected 'trans: from label to'");
        if (!t.index.count(tok[0]) || !t.index.count(tok[2])) fail(*l, "undeclared state");
        a.add(t.index[tok[0]], label_of(*l, a.alphabet, tok[1]), t.index[tok[2]]);
    }
    a.validate();
    return a;
}

BlindAutomaton parse_blind(const std::string& text) {
    const Document d = split(text);
    expect_kind(d, "blind");
    if (d.params.rfind("k=", 0) != 0) throw ParseError("@blind needs a k=<counters> parameter");
    int k = 0;
    try {
        std::size_t used = 0;
        k = std::stoi(d.params.substr(2), &used);
        if (used != d.params.size() - 2 || k < 0) throw ParseError("");
    } catch (const std::exception&) {
        throw ParseError("bad counter count '" + d.params + "'");
    }
    auto t = automaton_text(d, "alphabet");
    BlindAutomaton a(t.alphabet, k, static_cast<int>(t.states.size()));
    a.names = t.states;
    a.initial = t.initial;
    for (int f : t.finals) a.set_final(f);
    for (const auto* l : t.trans) {
        const auto& v = l->value;
        auto open = v.find('('), close = v.find(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            fail(*l, "expected 'trans: from label (d1,...,dk) to'");
        auto head = tokens(v.substr(0, open)), tail = tokens(v.substr(close + 1));
        if (head.size() != 2 || tail.size() != 1) fail(*l, "expected 'trans: from label (d1,...,dk) to'");
        std::vector<int> delta;
        std::string inner = v.substr(open + 1, close - open - 1);
        std::istringstream in(inner);
        std::string item;
        while (std::getline(in, item, ',')) {
            item = trim_ws(item);
            if (item.empty()) continue;
            try {
                std::size_t used = 0;
                int x = std::stoi(item, &used);
                if (used != item.size()) throw ParseError("");
                delta.push_back(x);
            } catch (const std::exception&) {
                fail(*l, "bad counter update '" + item + "'");
            }
        }
        if (delta.size() != static_cast<std::size_t>(k)) fail(*l, "counter update needs " + std::to_string(k) + " entries");
        for (int x : delta)
            if (x < -1 || x > 1) fail(*l, "counter updates must be -1, 0 or 1");
        if (!t.index.count(head[0]) || !t.index.count(tail[0])) fail(*l, "undeclared state");
        a.add(t.index[head[0]], label_of(*l, a.alphabet, head[1]), delta, t.index[tail[0]]);
    }
    a.validate();
    return a;
}

Ideal parse_ideal(const std::string& text) {
    const Document d = split(text);
    expect_kind(d, "ideal");
    std::optional<Alphabet> x;
    const Line* seq = nullptr;
    for (const auto& l : d.lines) {
        if (l.key == "alphabet") x = Alphabet(tokens(l.value));
        else if (l.key == "seq") seq = &l;
        else fail(l, "unknown key '" + l.key + "'");
    }
    if (!x) throw ParseError("missing 'alphabet:' line");
    if (!seq) throw ParseError("missing 'seq:' line");
    return normalize(parse_ideal_seq(seq->value, *x));
}

Cfg parse_cfg(const std::string& text) {
    const Document d = split(text);
    expect_kind(d, "cfg");
    Cfg g;
    bool have_terminals = false;
    std::string start;
    std::vector<const Line*> prods;
    for (const auto& l : d.lines) {
        if (l.key == "terminals") {
            g.terminals = Alphabet(tokens(l.value));
            have_terminals = true;
        } else if (l.key == "nonterminals") {
            for (const auto& s : tokens(l.value)) g.add_nonterminal(s);
        } else if (l.key == "start") {
            auto t = tokens(l.value);
            if (t.size() != 1) fail(l, "exactly one start symbol expected");
            start = t[0];
        } else if (l.key == "prod") {
            prods.push_back(&l);
        } else {
            fail(l, "unknown key '" + l.key + "'");
        }
    }
    if (!have_terminals) throw ParseError("missing 'terminals:' line");
    if (start.empty()) throw ParseError("missing 'start:' line");
    auto nonterminal = [&](const Line& l, const std::string& s) {
        if (s == "eps" || s == "->" || s == "|") fail(l, "'" + s + "' cannot be a nonterminal");
        if (g.terminals.contains(s)) fail(l, "terminal '" + s + "' used as a nonterminal");
        return g.add_nonterminal(s);
    };
    g.start = nonterminal(*d.lines.begin(), start);
    for (const auto* l : prods) {
        auto t = tokens(l->value);
        if (t.size() < 2 || t[1] != "->") fail(*l, "expected 'prod: A -> body'");
        const int lhs = nonterminal(*l, t[0]);
        Production p{lhs, {}};
        for (std::size_t i = 2; i <= t.size(); ++i) {
            if (i == t.size() || t[i] == "|") {
                g.productions.push_back(p);
                p.body.clear();
                continue;
            }
            if (t[i] == "eps") continue;
            if (g.terminals.contains(t[i])) p.body.push_back({true, g.terminals.letter(t[i])});
            else p.body.push_back({false, nonterminal(*l, t[i])});
        }
    }
    g.validate();
    return g;
}

ModelRef parse_model(const std::string& text) {
    const Document d = split(text);
    if (d.kind == "nfa") return NfaModel{parse_nfa(text)};
    if (d.kind == "blind") return BlindModel{parse_blind(text)};
    if (d.kind == "ideal") return IdealModel{parse_ideal(text)};
    if (d.kind == "cfg") return CfgModel{to_cnf(parse_cfg(text))};
    if (d.kind == "oca")
        throw ParseError("one-counter automata are not supported; encode the model as @blind or @cfg instead");
    throw ParseError("unknown model kind '@" + d.kind + "'");
}

ModelRef load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return parse_model(s.str());
}

namespace {

template <class A>
std::string automaton_body(const A& a) {
    std::string out = "alphabet: " + join(a.alphabet.symbols()) + "\nstates:";
    for (int q = 0; q < a.num_states; ++q) out += " " + a.state_name(q);
    out += "\ninitial: " + a.state_name(a.initial) + "\nfinal:";
    for (int q = 0; q < a.num_states; ++q)
        if (a.is_final(q)) out += " " + a.state_name(q);
    out += "\n";
    return out;
}

std::string label_text(const Alphabet& x, Letter l) { return l == EPS ? "eps" : x.symbol(l); }

}  // namespace

std::string serialize_nfa(const Nfa& a) {
    std::string out = "@nfa\n" + automaton_body(a);
    for (const auto& t : a.transitions)
        out += "trans: " + a.state_name(t.from) + " " + label_text(a.alphabet, t.label) + " " + a.state_name(t.to) + "\n";
    return out;
}

std::string serialize_dfa(const Dfa& d) { return serialize_nfa(dfa_to_nfa(d)); }

std::string serialize_blind(const BlindAutomaton& a) {
    std::string out = "@blind k=" + std::to_string(a.k) + "\n" + automaton_body(a);
    for (const auto& t : a.transitions) {
        out += "trans: " + a.state_name(t.from) + " " + label_text(a.alphabet, t.label) + " (";
        for (std::size_t i = 0; i < t.delta.size(); ++i) out += (i ? "," : "") + std::to_string(t.delta[i]);
        out += ") " + a.state_name(t.to) + "\n";
    }
    return out;
}

std::string serialize_ideal(const Ideal& i) {
    return "@ideal\nalphabet: " + join(i.ambient.symbols()) + "\nseq: " + format_ideal(i) + "\n";
}

std::string serialize_cfg(const Cfg& g) {
    std::string out = "@cfg\nterminals: " + join(g.terminals.symbols()) + "\nnonterminals: " + join(g.nonterminals) +
                      "\nstart: " + g.nonterminals.at(static_cast<std::size_t>(g.start)) + "\n";
    for (const auto& p : g.productions) {
        out += "prod: " + g.nonterminals[static_cast<std::size_t>(p.lhs)] + " ->";
        for (const auto& s : p.body)
            out += " " + (s.terminal ? g.terminals.symbol(s.id) : g.nonterminals[static_cast<std::size_t>(s.id)]);
        out += "\n";
    }
    return out;
}

std::string serialize_model(const ModelRef& m) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, IdealModel>) return serialize_ideal(x.ideal);
            else if constexpr (std::is_same_v<T, NfaModel>) return serialize_nfa(x.nfa);
            else if constexpr (std::is_same_v<T, BlindModel>) return serialize_blind(x.automaton);
            else return serialize_cfg(to_cfg(x.grammar));
        },
        m);
}

}  // namespace subword
