#include "subword/grammar.hpp"

#include "bitset.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>

namespace subword {

using detail::Bits;

int Cfg::add_nonterminal(const std::string& name) {
    int i = find_nonterminal(name);
    if (i >= 0) return i;
    nonterminals.push_back(name);
    return static_cast<int>(nonterminals.size()) - 1;
}

int Cfg::find_nonterminal(const std::string& name) const {
    auto it = std::find(nonterminals.begin(), nonterminals.end(), name);
    return it == nonterminals.end() ? -1 : static_cast<int>(it - nonterminals.begin());
}

void Cfg::validate() const {
    const int n = static_cast<int>(nonterminals.size());
    if (start < 0 || start >= n) throw Error("start symbol is not a nonterminal");
    for (const auto& name : nonterminals)
        if (terminals.contains(name)) throw Error("symbol '" + name + "' is both terminal and nonterminal");
    for (const auto& p : productions) {
        if (p.lhs < 0 || p.lhs >= n) throw Error("production for an undeclared nonterminal");
        for (const auto& s : p.body) {
            if (s.terminal && (s.id < 0 || static_cast<std::size_t>(s.id) >= terminals.size()))
                throw Error("production uses an undeclared terminal");
            if (!s.terminal && (s.id < 0 || s.id >= n)) throw Error("production uses an undeclared nonterminal");
        }
    }
}

namespace {

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
    std::string name = base;
    while (used.count(name)) name += "'";
    used.insert(name);
    return name;
}

CnfGrammar empty_grammar(const Alphabet& x, const std::string& start) {
    CnfGrammar g;
    g.terminals = x;
    g.names = {start};
    g.eps = {false};
    g.empty = true;
    return g;
}

// drops nonterminals not reachable from the start through binary rules
CnfGrammar reachable_part(const CnfGrammar& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<int>> succ(n);
    for (const auto& b : g.binary) {
        succ[static_cast<std::size_t>(b.lhs)].push_back(b.left);
        succ[static_cast<std::size_t>(b.lhs)].push_back(b.right);
    }
    std::vector<int> id(n, -1);
    std::vector<int> order{g.start};
    id[static_cast<std::size_t>(g.start)] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int s : succ[static_cast<std::size_t>(order[i])])
            if (id[static_cast<std::size_t>(s)] < 0) {
                id[static_cast<std::size_t>(s)] = static_cast<int>(order.size());
                order.push_back(s);
            }
    CnfGrammar r;
    r.terminals = g.terminals;
    r.start = 0;
    for (int a : order) {
        r.names.push_back(g.names[static_cast<std::size_t>(a)]);
        r.eps.push_back(g.eps[static_cast<std::size_t>(a)]);
    }
    for (const auto& b : g.binary)
        if (id[static_cast<std::size_t>(b.lhs)] >= 0)
            r.binary.push_back({id[static_cast<std::size_t>(b.lhs)], id[static_cast<std::size_t>(b.left)],
                                id[static_cast<std::size_t>(b.right)]});
    for (const auto& u : g.unary)
        if (id[static_cast<std::size_t>(u.lhs)] >= 0) r.unary.push_back({id[static_cast<std::size_t>(u.lhs)], u.letter});
    return r;
}

}  // namespace

CnfGrammar to_cnf(const Cfg& g) {
    g.validate();
    const std::size_t n = g.nonterminals.size();

    std::vector<bool> productive(n, false);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions) {
            if (productive[static_cast<std::size_t>(p.lhs)]) continue;
            bool ok = std::all_of(p.body.begin(), p.body.end(),
                                  [&](const Symbol& s) { return s.terminal || productive[static_cast<std::size_t>(s.id)]; });
            if (ok) productive[static_cast<std::size_t>(p.lhs)] = changed = true;
        }
    }
    if (!productive[static_cast<std::size_t>(g.start)])
        return empty_grammar(g.terminals, g.nonterminals[static_cast<std::size_t>(g.start)]);

    CnfGrammar c;
    c.terminals = g.terminals;
    c.names = g.nonterminals;
    c.start = g.start;
    c.eps.assign(n, false);
    std::set<std::string> used(g.nonterminals.begin(), g.nonterminals.end());
    for (const auto& s : g.terminals.symbols()) used.insert(s);
    auto add_nt = [&](const std::string& base) {
        c.names.push_back(fresh_name(base, used));
        c.eps.push_back(false);
        return static_cast<int>(c.names.size()) - 1;
    };
    std::vector<int> wrap(g.terminals.size(), -1);
    auto as_nt = [&](const Symbol& s) {
        if (!s.terminal) return s.id;
        auto& w = wrap[static_cast<std::size_t>(s.id)];
        if (w < 0) {
            w = add_nt("T_" + g.terminals.symbol(s.id));
            c.unary.push_back({w, s.id});
        }
        return w;
    };

    std::vector<std::pair<int, int>> units;
    for (const auto& p : g.productions) {
        bool ok = std::all_of(p.body.begin(), p.body.end(),
                              [&](const Symbol& s) { return s.terminal || productive[static_cast<std::size_t>(s.id)]; });
        if (!ok || !productive[static_cast<std::size_t>(p.lhs)]) continue;
        const auto& b = p.body;
        if (b.empty()) {
            c.eps[static_cast<std::size_t>(p.lhs)] = true;
        } else if (b.size() == 1) {
            if (b[0].terminal) c.unary.push_back({p.lhs, b[0].id});
            else units.emplace_back(p.lhs, b[0].id);
        } else {
            int lhs = p.lhs;
            for (std::size_t i = 0; i + 2 < b.size(); ++i) {
                int rest = add_nt(g.nonterminals[static_cast<std::size_t>(p.lhs)] + "_" + std::to_string(i + 1));
                c.binary.push_back({lhs, as_nt(b[i]), rest});
                lhs = rest;
            }
            c.binary.push_back({lhs, as_nt(b[b.size() - 2]), as_nt(b.back())});
        }
    }

    // unit closure: A =>* B by unit rules, then copy B's rules to A
    const std::size_t m = c.names.size();
    std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
    for (std::size_t a = 0; a < m; ++a) reach[a][a] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (auto [a, b] : units)
            for (std::size_t x = 0; x < m; ++x)
                if (reach[static_cast<std::size_t>(b)][x] && !reach[static_cast<std::size_t>(a)][x])
                    reach[static_cast<std::size_t>(a)][x] = changed = true;
    }
    if (!units.empty()) {
        auto bin = c.binary;
        auto un = c.unary;
        auto eps = c.eps;
        std::set<std::tuple<int, int, int>> seen_b;
        std::set<std::pair<int, int>> seen_u;
        c.binary.clear();
        c.unary.clear();
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                if (!reach[a][b]) continue;
                if (eps[b]) c.eps[a] = true;
                for (const auto& r : bin)
                    if (static_cast<std::size_t>(r.lhs) == b && seen_b.insert({static_cast<int>(a), r.left, r.right}).second)
                        c.binary.push_back({static_cast<int>(a), r.left, r.right});
                for (const auto& r : un)
                    if (static_cast<std::size_t>(r.lhs) == b && seen_u.insert({static_cast<int>(a), r.letter}).second)
                        c.unary.push_back({static_cast<int>(a), r.letter});
            }
        }
    }
    return reachable_part(c);
}

Cfg to_cfg(const CnfGrammar& g) {
    Cfg c;
    c.terminals = g.terminals;
    c.nonterminals = g.names;
    c.start = g.start;
    if (g.empty) return c;
    for (const auto& b : g.binary) c.productions.push_back({b.lhs, {{false, b.left}, {false, b.right}}});
    for (const auto& u : g.unary) c.productions.push_back({u.lhs, {{true, u.letter}}});
    for (std::size_t a = 0; a < g.size(); ++a)
        if (g.eps[a]) c.productions.push_back({static_cast<int>(a), {}});
    return c;
}

std::vector<bool> nullable(const CnfGrammar& g) {
    std::vector<bool> nul = g.eps;
    if (g.empty) return std::vector<bool>(g.size(), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& b : g.binary)
            if (!nul[static_cast<std::size_t>(b.lhs)] && nul[static_cast<std::size_t>(b.left)] &&
                nul[static_cast<std::size_t>(b.right)])
                nul[static_cast<std::size_t>(b.lhs)] = changed = true;
    }
    return nul;
}

namespace {

// CYK where rules A -> B C with a nullable side act as unit rules
class Cyk {
public:
    explicit Cyk(const CnfGrammar& g) : g_(g), n_(g.size()), nul_(nullable(g)) {
        std::vector<std::vector<int>> up(n_);
        for (const auto& b : g.binary) {
            if (nul_[static_cast<std::size_t>(b.right)]) up[static_cast<std::size_t>(b.left)].push_back(b.lhs);
            if (nul_[static_cast<std::size_t>(b.left)]) up[static_cast<std::size_t>(b.right)].push_back(b.lhs);
        }
        closure_.assign(n_, Bits(n_));
        for (std::size_t a = 0; a < n_; ++a) {
            std::vector<int> stack{static_cast<int>(a)};
            closure_[a].set(a);
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : up[static_cast<std::size_t>(x)])
                    if (!closure_[a].test(static_cast<std::size_t>(y))) {
                        closure_[a].set(static_cast<std::size_t>(y));
                        stack.push_back(y);
                    }
            }
        }
    }

    /// Nonterminals deriving w.
    Bits derive(const Word& w) const {
        const std::size_t len = w.size();
        Bits none(n_);
        if (g_.empty) return none;
        if (len == 0) {
            Bits b(n_);
            for (std::size_t a = 0; a < n_; ++a)
                if (nul_[a]) b.set(a);
            return b;
        }
        // t[i][l-1]: span starting at i of length l
        std::vector<std::vector<Bits>> t(len, std::vector<Bits>(len, Bits(n_)));
        for (std::size_t i = 0; i < len; ++i) {
            Bits b(n_);
            for (const auto& u : g_.unary)
                if (u.letter == w[i]) b.set(static_cast<std::size_t>(u.lhs));
            t[i][0] = close(b);
        }
        for (std::size_t l = 2; l <= len; ++l)
            for (std::size_t i = 0; i + l <= len; ++i) {
                Bits b(n_);
                for (std::size_t s = 1; s < l; ++s) {
                    const Bits& left = t[i][s - 1];
                    const Bits& right = t[i + s][l - s - 1];
                    for (const auto& r : g_.binary)
                        if (left.test(static_cast<std::size_t>(r.left)) && right.test(static_cast<std::size_t>(r.right)))
                            b.set(static_cast<std::size_t>(r.lhs));
                }
                t[i][l - 1] = close(b);
            }
        return t[0][len - 1];
    }

private:
    const CnfGrammar& g_;
    std::size_t n_;
    std::vector<bool> nul_;
    std::vector<Bits> closure_;

    Bits close(const Bits& b) const {
        Bits out(n_);
        for (std::size_t a = 0; a < n_; ++a)
            if (b.test(a))
                for (std::size_t i = 0; i < out.w.size(); ++i) out.w[i] |= closure_[a].w[i];
        return out;
    }
};

}  // namespace

bool cyk_accepts(const CnfGrammar& g, const Word& w) {
    if (g.empty) return false;
    return Cyk(g).derive(w).test(static_cast<std::size_t>(g.start));
}

std::vector<Word> enumerate_cfg_upto(const CnfGrammar& g, std::size_t maxlen) {
    std::vector<Word> out;
    if (g.empty) return out;
    Cyk cyk(g);
    const std::size_t x = g.terminals.size();
    std::uint64_t budget = 0;
    for (std::size_t len = 0; len <= maxlen; ++len) {
        Word w(len, 0);
        while (true) {
            if (++budget > resource_cap()) throw ResourceError("resource cap exceeded enumerating grammar words");
            if (cyk.derive(w).test(static_cast<std::size_t>(g.start))) out.push_back(w);
            std::size_t i = len;
            while (i > 0 && static_cast<std::size_t>(w[i - 1]) + 1 == x) w[--i] = 0;
            if (i == 0) break;
            ++w[i - 1];
        }
        if (x == 0) break;
    }
    return out;
}

CnfGrammar downward_grammar(const CnfGrammar& g) {
    CnfGrammar d = g;
    if (!d.empty) d.eps.assign(d.size(), true);
    return d;
}

namespace {

// g over terminals T plus one extra letter per nonterminal, where A -> #A marks "stop here"
CnfGrammar sentential_grammar(const CnfGrammar& g) {
    std::vector<std::string> sym = g.terminals.symbols();
    for (const auto& n : g.names) sym.push_back("#" + n);
    CnfGrammar m = g;
    m.terminals = Alphabet(sym);
    m.empty = false;
    if (g.empty) {
        m.binary.clear();
        m.unary.clear();
        m.eps.assign(m.size(), false);
    }
    for (std::size_t a = 0; a < g.size(); ++a)
        m.unary.push_back({static_cast<int>(a), static_cast<Letter>(g.terminals.size() + a)});
    return m;
}

Word sentential_word(const CnfGrammar& g, const std::vector<Symbol>& s) {
    Word w;
    for (const auto& x : s) w.push_back(x.terminal ? x.id : static_cast<Letter>(g.terminals.size()) + x.id);
    return w;
}

}  // namespace

bool sentential_member(const CnfGrammar& g, int a, const std::vector<Symbol>& s) {
    if (a < 0 || static_cast<std::size_t>(a) >= g.size()) throw Error("unknown nonterminal");
    const auto m = sentential_grammar(g);
    return Cyk(m).derive(sentential_word(g, s)).test(static_cast<std::size_t>(a));
}

PumpSets compute_pump_sets(const CnfGrammar& g) {
    const auto m = sentential_grammar(g);
    Cyk cyk(m);
    PumpSets p;
    p.left.resize(g.terminals.size());
    p.right.resize(g.terminals.size());
    for (std::size_t x = 0; x < g.terminals.size(); ++x)
        for (std::size_t a = 0; a < g.size(); ++a) {
            const Symbol letter{true, static_cast<int>(x)}, nt{false, static_cast<int>(a)};
            if (cyk.derive(sentential_word(g, {letter, nt})).test(a)) p.left[x].push_back(static_cast<int>(a));
            if (cyk.derive(sentential_word(g, {nt, letter})).test(a)) p.right[x].push_back(static_cast<int>(a));
        }
    return p;
}

namespace {

void require_distinct(const std::vector<Letter>& order) {
    auto s = order;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw Error("order letters must be distinct");
}

}  // namespace

Cfg omega_grammar(const CnfGrammar& gd, const std::vector<Letter>& order) {
    require_distinct(order);
    std::vector<std::string> sym;
    for (Letter a : order) sym.push_back(gd.terminals.symbol(a) + "^w");
    Cfg c;
    c.terminals = Alphabet(sym);
    c.nonterminals = gd.names;
    c.start = gd.start;
    if (gd.empty) return c;
    for (const auto& b : gd.binary) c.productions.push_back({b.lhs, {{false, b.left}, {false, b.right}}});
    for (std::size_t a = 0; a < gd.size(); ++a)
        if (gd.eps[a]) c.productions.push_back({static_cast<int>(a), {}});
    const auto pumps = compute_pump_sets(gd);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Symbol w{true, static_cast<int>(i)};
        for (int a : pumps.left[static_cast<std::size_t>(order[i])]) c.productions.push_back({a, {w, {false, a}}});
        for (int a : pumps.right[static_cast<std::size_t>(order[i])]) c.productions.push_back({a, {{false, a}, w}});
    }
    return c;
}

Dfa block_dfa(const Alphabet& x, const std::vector<Letter>& order) {
    require_distinct(order);
    const std::size_t n = order.size();
    const int sink = static_cast<int>(std::max<std::size_t>(n, 1));
    Dfa d;
    d.alphabet = x;
    d.num_states = sink + 1;
    d.delta.assign(static_cast<std::size_t>(d.num_states) * x.size(), sink);
    d.finals.assign(static_cast<std::size_t>(d.num_states), true);
    d.finals[static_cast<std::size_t>(sink)] = false;
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t j = q; j < n; ++j)
            d.delta[q * x.size() + static_cast<std::size_t>(order[j])] = static_cast<int>(j);
    return d;
}

namespace {

struct Edge {
    int to;
    int out;  // output letter, or -1
};

// per state and input letter: the machine's moves
using Machine = std::vector<std::vector<std::vector<Edge>>>;

Machine dfa_machine(const Dfa& d) {
    Machine m(static_cast<std::size_t>(d.num_states), std::vector<std::vector<Edge>>(d.alphabet.size()));
    for (int q = 0; q < d.num_states; ++q)
        for (std::size_t a = 0; a < d.alphabet.size(); ++a)
            m[static_cast<std::size_t>(q)][a].push_back({d.next(q, static_cast<Letter>(a)), -1});
    return m;
}

// prod[A][p] = states q with A deriving some input that moves the machine from p to q
std::vector<std::vector<Bits>> productive_triples(const CnfGrammar& g, const Machine& m) {
    const std::size_t q = m.size(), n = g.size();
    std::vector<std::vector<Bits>> prod(n, std::vector<Bits>(q, Bits(q)));
    if (n * q * q > 64 * resource_cap()) throw ResourceError("resource cap exceeded in grammar product");
    for (const auto& u : g.unary)
        for (std::size_t p = 0; p < q; ++p)
            for (const auto& e : m[p][static_cast<std::size_t>(u.letter)])
                prod[static_cast<std::size_t>(u.lhs)][p].set(static_cast<std::size_t>(e.to));
    for (std::size_t a = 0; a < n; ++a)
        if (g.eps[a])
            for (std::size_t p = 0; p < q; ++p) prod[a][p].set(p);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& b : g.binary)
            for (std::size_t p = 0; p < q; ++p) {
                Bits& target = prod[static_cast<std::size_t>(b.lhs)][p];
                const Bits& mid = prod[static_cast<std::size_t>(b.left)][p];
                for (std::size_t r = 0; r < q; ++r) {
                    if (!mid.test(r)) continue;
                    const Bits& tail = prod[static_cast<std::size_t>(b.right)][r];
                    for (std::size_t i = 0; i < target.w.size(); ++i) {
                        const auto merged = target.w[i] | tail.w[i];
                        if (merged != target.w[i]) {
                            target.w[i] = merged;
                            changed = true;
                        }
                    }
                }
            }
    }
    return prod;
}

// grammar for the outputs of the machine on L(g), from `init` to any of `finals`
Cfg transduce(const CnfGrammar& g, const Machine& m, int init, const std::vector<int>& finals, const Alphabet& out) {
    Cfg h;
    h.terminals = out;
    h.start = h.add_nonterminal("S");
    if (g.empty) return h;
    const auto prod = productive_triples(g, m);
    std::map<std::tuple<int, int, int>, int> id;
    std::deque<std::tuple<int, int, int>> work;
    auto intern = [&](int a, int p, int q) {
        auto key = std::make_tuple(a, p, q);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int v = static_cast<int>(h.nonterminals.size());
        h.nonterminals.push_back(g.names[static_cast<std::size_t>(a)] + "_" + std::to_string(p) + "_" + std::to_string(q));
        id.emplace(key, v);
        work.push_back(key);
        if (h.nonterminals.size() > resource_cap()) throw ResourceError("resource cap exceeded in grammar product");
        return v;
    };
    for (int f : finals)
        if (prod[static_cast<std::size_t>(g.start)][static_cast<std::size_t>(init)].test(static_cast<std::size_t>(f)))
            h.productions.push_back({h.start, {{false, intern(g.start, init, f)}}});
    std::vector<std::vector<const CnfGrammar::Binary*>> bin(g.size());
    std::vector<std::vector<Letter>> un(g.size());
    for (const auto& b : g.binary) bin[static_cast<std::size_t>(b.lhs)].push_back(&b);
    for (const auto& u : g.unary) un[static_cast<std::size_t>(u.lhs)].push_back(u.letter);
    while (!work.empty()) {
        auto [a, p, q] = work.front();
        work.pop_front();
        const int self = id[{a, p, q}];
        const auto sa = static_cast<std::size_t>(a);
        if (g.eps[sa] && p == q) h.productions.push_back({self, {}});
        for (Letter x : un[sa])
            for (const auto& e : m[static_cast<std::size_t>(p)][static_cast<std::size_t>(x)])
                if (e.to == q) {
                    if (e.out < 0) h.productions.push_back({self, {}});
                    else h.productions.push_back({self, {{true, e.out}}});
                }
        for (const auto* b : bin[sa])
            for (std::size_t r = 0; r < m.size(); ++r)
                if (prod[static_cast<std::size_t>(b->left)][static_cast<std::size_t>(p)].test(r) &&
                    prod[static_cast<std::size_t>(b->right)][r].test(static_cast<std::size_t>(q))) {
                    int l = intern(b->left, p, static_cast<int>(r));
                    int rr = intern(b->right, static_cast<int>(r), q);
                    h.productions.push_back({self, {{false, l}, {false, rr}}});
                }
    }
    return h;
}

}  // namespace

bool cfg_regular_inclusion(const CnfGrammar& g, const Dfa& d) {
    require_same(g.terminals, d.alphabet);
    if (g.empty) return true;
    const auto prod = productive_triples(g, dfa_machine(d));
    const Bits& reach = prod[static_cast<std::size_t>(g.start)][static_cast<std::size_t>(d.initial)];
    for (int q = 0; q < d.num_states; ++q)
        if (!d.finals[static_cast<std::size_t>(q)] && reach.test(static_cast<std::size_t>(q))) return false;
    return true;
}

std::optional<Word> cfg_regular_counterexample(const CnfGrammar& g, const Dfa& d) {
    require_same(g.terminals, d.alphabet);
    if (g.empty) return std::nullopt;
    const std::size_t q = static_cast<std::size_t>(d.num_states), n = g.size();
    constexpr std::uint32_t INF = std::numeric_limits<std::uint32_t>::max();
    if (n * q * q > resource_cap()) throw ResourceError("resource cap exceeded in grammar product");
    struct Choice {
        int kind = -1;  // 0 eps, 1 letter, 2 binary
        int a = 0, b = 0, r = 0;
    };
    auto at = [&](std::size_t a, std::size_t p, std::size_t s) { return (a * q + p) * q + s; };
    std::vector<std::uint32_t> len(n * q * q, INF);
    std::vector<Choice> how(n * q * q);
    for (std::size_t a = 0; a < n; ++a)
        if (g.eps[a])
            for (std::size_t p = 0; p < q; ++p) {
                len[at(a, p, p)] = 0;
                how[at(a, p, p)] = {0};
            }
    for (const auto& u : g.unary)
        for (std::size_t p = 0; p < q; ++p) {
            auto s = static_cast<std::size_t>(d.next(static_cast<int>(p), u.letter));
            auto& l = len[at(static_cast<std::size_t>(u.lhs), p, s)];
            if (l > 1) {
                l = 1;
                how[at(static_cast<std::size_t>(u.lhs), p, s)] = {1, u.letter};
            }
        }
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& b : g.binary)
            for (std::size_t p = 0; p < q; ++p)
                for (std::size_t r = 0; r < q; ++r) {
                    const auto l1 = len[at(static_cast<std::size_t>(b.left), p, r)];
                    if (l1 == INF) continue;
                    for (std::size_t s = 0; s < q; ++s) {
                        const auto l2 = len[at(static_cast<std::size_t>(b.right), r, s)];
                        if (l2 == INF) continue;
                        auto& l = len[at(static_cast<std::size_t>(b.lhs), p, s)];
                        if (l1 + l2 < l) {
                            l = l1 + l2;
                            how[at(static_cast<std::size_t>(b.lhs), p, s)] = {2, b.left, b.right, static_cast<int>(r)};
                            changed = true;
                        }
                    }
                }
    }
    std::size_t best = q;
    const auto s0 = static_cast<std::size_t>(g.start), p0 = static_cast<std::size_t>(d.initial);
    for (std::size_t s = 0; s < q; ++s)
        if (!d.finals[s] && len[at(s0, p0, s)] != INF && (best == q || len[at(s0, p0, s)] < len[at(s0, p0, best)])) best = s;
    if (best == q) return std::nullopt;
    Word w;
    std::function<void(std::size_t, std::size_t, std::size_t)> emit = [&](std::size_t a, std::size_t p, std::size_t s) {
        const auto& c = how[at(a, p, s)];
        if (c.kind == 1) w.push_back(c.a);
        if (c.kind != 2) return;
        emit(static_cast<std::size_t>(c.a), p, static_cast<std::size_t>(c.r));
        emit(static_cast<std::size_t>(c.b), static_cast<std::size_t>(c.r), s);
    };
    emit(s0, p0, best);
    return w;
}

bool sup_decide(const CnfGrammar& g, const std::vector<Letter>& order) {
    require_distinct(order);
    if (g.empty) return false;
    if (!cfg_regular_inclusion(g, block_dfa(g.terminals, order)))
        throw Error("language is not contained in the bounded language of the given order");
    const CnfGrammar omega = to_cnf(omega_grammar(downward_grammar(g), order));
    Word w;
    for (std::size_t i = 0; i < order.size(); ++i) w.push_back(static_cast<Letter>(i));
    return cyk_accepts(omega, w);
}

bool ideal_in_cfg(const Ideal& ideal, const CnfGrammar& g) {
    require_same(ideal.ambient, g.terminals);
    if (g.empty) return false;
    const std::size_t n = ideal.length();
    const Alphabet& x = g.terminals;

    // block i: states (i, j), j = progress inside a copy of the canonical word of Y_i
    std::vector<Word> canon;
    std::vector<int> base, out_symbol;
    std::vector<std::string> out_names;
    int states = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        canon.push_back(canonical_word(ideal.stars[i], x));
        base.push_back(states);
        states += static_cast<int>(std::max<std::size_t>(canon.back().size(), 1));
        if (canon.back().empty()) {
            out_symbol.push_back(-1);
        } else {
            out_symbol.push_back(static_cast<int>(out_names.size()));
            out_names.push_back("b" + std::to_string(i));
        }
    }
    Machine m(static_cast<std::size_t>(states), std::vector<std::vector<Edge>>(x.size()));
    for (std::size_t i = 0; i <= n; ++i) {
        const auto b0 = static_cast<std::size_t>(base[i]);
        const Word& c = canon[i];
        for (Letter y : c) m[b0][static_cast<std::size_t>(y)].push_back({base[i], -1});
        for (std::size_t j = 0; j < c.size(); ++j) {
            const bool last = j + 1 == c.size();
            m[b0 + j][static_cast<std::size_t>(c[j])].push_back(
                {last ? base[i] : base[i] + static_cast<int>(j) + 1, last ? out_symbol[i] : -1});
        }
        if (i < n) m[b0][static_cast<std::size_t>(ideal.opts[i])].push_back({base[i + 1], -1});
    }

    const Alphabet outs(out_names);
    const Cfg h = transduce(downward_grammar(g), m, 0, {base[n]}, outs);
    const CnfGrammar hc = to_cnf(h);
    std::vector<Letter> order;
    for (std::size_t i = 0; i < out_names.size(); ++i) order.push_back(static_cast<Letter>(i));
    return sup_decide(hc, order);
}

std::vector<Ideal> cfg_ideal_decomposition(const CnfGrammar& g, const CfgDecompositionOptions& opts) {
    if (g.empty) return {};
    const CnfGrammar gd = downward_grammar(g);
    Cyk cyk(gd);
    auto in_closure = [&](const Word& w) { return cyk.derive(w).test(static_cast<std::size_t>(gd.start)); };
    std::vector<Ideal> accepted;
    for (std::size_t len = 0; len <= opts.max_length; ++len) {
        for (const auto& cand : candidate_ideals(g.terminals, len)) {
            if (std::any_of(accepted.begin(), accepted.end(), [&](const Ideal& j) { return ideal_inclusion(cand, j); }))
                continue;
            if (!in_closure(ideal_witness(cand, 2))) continue;
            if (ideal_in_cfg(cand, g)) accepted.push_back(cand);
        }
        accepted = maximal_ideals(accepted);
        if (cfg_regular_inclusion(gd, determinize(union_nfa(accepted, g.terminals)))) return accepted;
    }
    throw ResourceError("ideal decomposition needs ideals longer than " + std::to_string(opts.max_length));
}

Cfg nfa_to_cfg(const Nfa& a) {
    a.validate();
    Cfg c;
    c.terminals = a.alphabet;
    for (int q = 0; q < a.num_states; ++q) c.nonterminals.push_back("Q" + std::to_string(q));
    c.start = a.initial;
    for (const auto& t : a.transitions) {
        if (t.label == EPS) c.productions.push_back({t.from, {{false, t.to}}});
        else c.productions.push_back({t.from, {{true, t.label}, {false, t.to}}});
    }
    for (int q = 0; q < a.num_states; ++q)
        if (a.is_final(q)) c.productions.push_back({q, {}});
    return c;
}

}  // namespace subword
