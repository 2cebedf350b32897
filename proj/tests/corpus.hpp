#pragma once

// Seeded generators and brute-force oracles shared by the unit tests and the acceptance run.

#include "subword/blind.hpp"
#include "subword/grammar.hpp"
#include "subword/ideal.hpp"
#include "subword/nfa.hpp"

#include <random>
#include <set>
#include <string>

namespace corpus {

using namespace subword;

using Rng = std::mt19937_64;

inline int below(Rng& g, std::size_t n) { return static_cast<int>(g() % n); }

inline Alphabet ab() { return Alphabet({"a", "b"}); }
inline Alphabet abc() { return Alphabet({"a", "b", "c"}); }

inline Alphabet letters(std::size_t n) {
    std::vector<std::string> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(std::string(1, static_cast<char>('a' + i)));
    return Alphabet(s);
}

/// m random transitions, labels including EPS one time in |X|+1; at least one final state.
inline Nfa random_nfa(Rng& g, const Alphabet& x, int n, int m) {
    Nfa a(x, n);
    for (int i = 0; i < m; ++i) {
        int from = below(g, static_cast<std::size_t>(n));
        int l = below(g, x.size() + 1);
        int to = below(g, static_cast<std::size_t>(n));
        a.add(from, l == static_cast<int>(x.size()) ? EPS : l, to);
    }
    a.set_final(below(g, static_cast<std::size_t>(n)));
    if (g() % 2) a.set_final(below(g, static_cast<std::size_t>(n)));
    return a;
}

/// n in [1,3], k in [0,kmax], 2..2n+3 transitions, one final state.
inline BlindAutomaton random_blind(Rng& g, const Alphabet& x, int kmax) {
    const int n = 1 + below(g, 3), k = below(g, static_cast<std::size_t>(kmax) + 1);
    BlindAutomaton a(x, k, n);
    const int m = 2 + below(g, static_cast<std::size_t>(2 * n + 2));
    for (int i = 0; i < m; ++i) {
        std::vector<int> d;
        for (int j = 0; j < k; ++j) d.push_back(below(g, 3) - 1);
        int l = below(g, x.size() + 1) - 1;
        int from = below(g, static_cast<std::size_t>(n));
        a.add(from, l, d, below(g, static_cast<std::size_t>(n)));
    }
    a.set_final(below(g, static_cast<std::size_t>(n)));
    return a;
}

inline Ideal random_ideal(Rng& g, const Alphabet& x, std::size_t maxlen) {
    const std::size_t len = static_cast<std::size_t>(below(g, maxlen + 1));
    const auto full = (LetterSet{1} << x.size()) - 1;
    IdealExpr e{x, {}};
    for (std::size_t i = 0; i <= len; ++i) {
        LetterSet y = g() % 3 == 0 ? 0 : static_cast<LetterSet>(g() % (full + 1));
        e.atoms.push_back(IdealAtom::star_of(y));
        if (i < len) e.atoms.push_back(IdealAtom::optional(below(g, x.size())));
    }
    return normalize(e);
}

inline Word random_word(Rng& g, std::size_t sigma, std::size_t len) {
    Word w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(below(g, sigma));
    return w;
}

/// Every word over sigma letters of length <= maxlen, shortlex.
inline std::vector<Word> all_words(std::size_t sigma, std::size_t maxlen) {
    std::vector<Word> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == maxlen) continue;
        for (std::size_t a = 0; a < sigma; ++a) {
            Word w = out[i];
            w.push_back(static_cast<Letter>(a));
            out.push_back(w);
        }
    }
    return out;
}

/// Subwords of the given words, restricted to length <= maxlen.
inline std::set<Word> subwords_upto(const std::vector<Word>& words, std::size_t maxlen) {
    std::set<Word> out;
    for (const auto& w : words) {
        const std::size_t n = w.size();
        if (n > 20) continue;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcountll(mask)) > maxlen) continue;
            Word s;
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i) & 1U) s.push_back(w[i]);
            out.insert(s);
        }
    }
    return out;
}

/// NFA accepting exactly the given words.
inline Nfa finite_nfa(const Alphabet& x, const std::vector<Word>& words) {
    Nfa a(x, 1);
    for (const auto& w : words) {
        int q = a.initial;
        for (Letter l : w) {
            int r = a.add_state();
            a.add(q, l, r);
            q = r;
        }
        a.set_final(q);
    }
    return a;
}

/// One state, final, looping on the given letters.
inline Nfa star_nfa(const Alphabet& x, const std::vector<Letter>& loop) {
    Nfa a(x, 1);
    for (Letter l : loop) a.add(0, l, 0);
    a.set_final(0);
    return a;
}

/// {a^n b^n} with one counter.
inline BlindAutomaton anbn_blind() {
    BlindAutomaton a(ab(), 1, 2);
    a.add(0, 0, {1}, 0);
    a.add(0, EPS, {0}, 1);
    a.add(1, 1, {-1}, 1);
    a.set_final(0);
    a.set_final(1);
    return a;
}

inline Cfg anbn_cfg() {
    Cfg g;
    g.terminals = ab();
    g.start = g.add_nonterminal("S");
    g.productions.push_back({0, {{true, 0}, {false, 0}, {true, 1}}});
    g.productions.push_back({0, {}});
    return g;
}

/// {a^n b}
inline Cfg anb_cfg() {
    Cfg g;
    g.terminals = ab();
    g.start = g.add_nonterminal("S");
    g.productions.push_back({0, {{true, 0}, {false, 0}}});
    g.productions.push_back({0, {{true, 1}}});
    return g;
}

/// nn nonterminals, np random productions with bodies of length <= 3, plus S -> (short terminal word).
inline Cfg random_cfg(Rng& g, const Alphabet& x, int nn, int np) {
    Cfg c;
    c.terminals = x;
    for (int i = 0; i < nn; ++i) c.add_nonterminal("N" + std::to_string(i));
    for (int i = 0; i < np; ++i) {
        Production p{below(g, static_cast<std::size_t>(nn)), {}};
        for (int j = below(g, 4); j > 0; --j) {
            if (g() % 2) p.body.push_back({true, below(g, x.size())});
            else p.body.push_back({false, below(g, static_cast<std::size_t>(nn))});
        }
        c.productions.push_back(p);
    }
    Production base{0, {}};
    for (int j = below(g, 3); j > 0; --j) base.body.push_back({true, below(g, x.size())});
    c.productions.push_back(base);
    return c;
}

/// Fixpoint over "A derives w[i..j)" read straight off the productions.
/// With drop set, terminals may also match the empty factor, giving the closure.
inline bool cfg_derives(const Cfg& c, const Word& w, bool drop = false) {
    const std::size_t n = w.size(), nn = c.nonterminals.size();
    std::vector<std::vector<std::vector<bool>>> d(nn, std::vector<std::vector<bool>>(n + 1, std::vector<bool>(n + 1, false)));
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : c.productions)
            for (std::size_t i = 0; i <= n; ++i) {
                // reach[j]: body prefix derives w[i..j)
                std::vector<bool> reach(n + 1, false);
                reach[i] = true;
                for (const auto& sym : p.body) {
                    std::vector<bool> next(n + 1, false);
                    for (std::size_t a = i; a <= n; ++a) {
                        if (!reach[a]) continue;
                        if (sym.terminal) {
                            if (drop) next[a] = true;
                            if (a < n && w[a] == sym.id) next[a + 1] = true;
                        } else {
                            for (std::size_t b = a; b <= n; ++b)
                                if (d[static_cast<std::size_t>(sym.id)][a][b]) next[b] = true;
                        }
                    }
                    reach = next;
                }
                auto& row = d[static_cast<std::size_t>(p.lhs)][i];
                for (std::size_t j = i; j <= n; ++j)
                    if (reach[j] && !row[j]) row[j] = changed = true;
            }
    }
    return d[static_cast<std::size_t>(c.start)][0][n];
}

inline std::set<Word> as_set(const std::vector<Word>& v) { return {v.begin(), v.end()}; }

}  // namespace corpus
