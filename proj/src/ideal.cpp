#include "subword/ideal.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace subword {

namespace {

void check_width(const Alphabet& x) {
    if (x.size() > 64) throw Error("ideals support at most 64 letters");
}

Letter min_letter(LetterSet y) { return static_cast<Letter>(__builtin_ctzll(y)); }

bool subset(LetterSet a, LetterSet b) { return (a & ~b) == 0; }

// one pass of the absorption rules; returns true if something changed
bool simplify(std::vector<IdealAtom>& atoms) {
    bool changed = false;
    std::vector<IdealAtom> out;
    out.reserve(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const auto& at = atoms[i];
        if (at.star && at.set == 0) { changed = true; continue; }
        if (!at.star) {
            bool left = !out.empty() && out.back().star && has(out.back().set, at.letter);
            bool right = i + 1 < atoms.size() && atoms[i + 1].star && has(atoms[i + 1].set, at.letter);
            if (left || right) { changed = true; continue; }
        }
        if (at.star && !out.empty() && out.back().star) {
            if (subset(out.back().set, at.set)) { out.back() = at; changed = true; continue; }
            if (subset(at.set, out.back().set)) { changed = true; continue; }
        }
        out.push_back(at);
    }
    atoms.swap(out);
    return changed;
}

}  // namespace

LetterSet letters_of(const Word& w) {
    LetterSet s = 0;
    for (Letter a : w) s |= singleton(a);
    return s;
}

Ideal normalize(const IdealExpr& e) {
    check_width(e.ambient);
    std::vector<IdealAtom> atoms = e.atoms;
    while (simplify(atoms)) {}

    Ideal r{e.ambient, {0}, {}};
    for (const auto& at : atoms) {
        if (at.star) {
            if (r.stars.back() == 0) {
                r.stars.back() = at.set;
            } else {
                // Y* Z* with neither nested: bridge with a letter of Y outside Z
                r.opts.push_back(min_letter(r.stars.back() & ~at.set));
                r.stars.push_back(at.set);
            }
        } else {
            r.opts.push_back(at.letter);
            r.stars.push_back(0);
        }
    }
    return r;
}

std::size_t expr_length(const IdealExpr& e) { return e.atoms.size(); }

IdealExpr to_expr(const Ideal& i) {
    IdealExpr e{i.ambient, {}};
    for (std::size_t j = 0; j <= i.length(); ++j) {
        e.atoms.push_back(IdealAtom::star_of(i.stars[j]));
        if (j < i.length()) e.atoms.push_back(IdealAtom::optional(i.opts[j]));
    }
    return e;
}

Word canonical_word(LetterSet y, const Alphabet& ambient) {
    Word w;
    for (std::size_t a = 0; a < ambient.size(); ++a)
        if (has(y, static_cast<Letter>(a))) w.push_back(static_cast<Letter>(a));
    return w;
}

Word ideal_witness(const Ideal& i, std::size_t m) {
    if (m == 0) throw Error("ideal_witness needs m >= 1");
    Word w;
    for (std::size_t j = 0; j <= i.length(); ++j) {
        Word c = canonical_word(i.stars[j], i.ambient);
        for (std::size_t r = 0; r < m; ++r) w.insert(w.end(), c.begin(), c.end());
        if (j < i.length()) w.push_back(i.opts[j]);
    }
    return w;
}

namespace {

// target state of the ordered DFA from state s on letter a (n+1 = sink)
std::size_t ideal_step(const Ideal& i, std::size_t s, Letter a) {
    const std::size_t n = i.length();
    if (s > n) return n + 1;
    if (has(i.stars[s], a)) return s;
    for (std::size_t j = s + 1; j <= n; ++j)
        if (i.opts[j - 1] == a || has(i.stars[j], a)) return j;
    return n + 1;
}

}  // namespace

Dfa ordered_dfa(const Ideal& i) {
    const std::size_t n = i.length();
    const std::size_t sigma = i.ambient.size();
    Dfa d;
    d.alphabet = i.ambient;
    d.num_states = static_cast<int>(n + 2);
    d.delta.resize((n + 2) * sigma);
    for (std::size_t s = 0; s < n + 2; ++s)
        for (std::size_t a = 0; a < sigma; ++a)
            d.delta[s * sigma + a] = static_cast<int>(ideal_step(i, s, static_cast<Letter>(a)));
    d.initial = 0;
    d.finals.assign(n + 2, true);
    d.finals[n + 1] = false;
    std::vector<int> rank(n + 2);
    for (std::size_t s = 0; s < n + 2; ++s) rank[s] = static_cast<int>(s);
    d.ordered_witness = rank;
    return d;
}

bool ideal_member(const Ideal& i, const Word& w) {
    std::size_t s = 0;
    for (Letter a : w) {
        s = ideal_step(i, s, a);
        if (s > i.length()) return false;
    }
    return true;
}

bool ideal_inclusion(const Ideal& i, const Ideal& j) {
    require_same(i.ambient, j.ambient);
    return ideal_member(j, ideal_witness(i, j.length() + 1));
}

std::string format_ideal(const Ideal& i) {
    // bridging letters and empty stars are implied by the normal form
    IdealExpr e{i.ambient, {}};
    for (std::size_t j = 0; j <= i.length(); ++j) {
        if (i.stars[j] != 0) e.atoms.push_back(IdealAtom::star_of(i.stars[j]));
        if (j < i.length() && !has(i.stars[j], i.opts[j])) e.atoms.push_back(IdealAtom::optional(i.opts[j]));
    }
    return format_expr(e);
}

std::string format_expr(const IdealExpr& e) {
    std::string out;
    for (const auto& at : e.atoms) {
        if (!out.empty()) out += ' ';
        if (at.star) {
            out += '[';
            bool first = true;
            for (Letter a : canonical_word(at.set, e.ambient)) {
                if (!first) out += ' ';
                out += e.ambient.symbol(a);
                first = false;
            }
            out += ']';
        } else {
            out += e.ambient.symbol(at.letter) + "?";
        }
    }
    return out.empty() ? "[]" : out;
}

IdealExpr parse_ideal_seq(const std::string& seq, const Alphabet& ambient) {
    check_width(ambient);
    IdealExpr e{ambient, {}};
    std::size_t p = 0;
    auto skip = [&] { while (p < seq.size() && std::isspace(static_cast<unsigned char>(seq[p]))) ++p; };
    auto token = [&] {
        std::size_t b = p;
        while (p < seq.size() && !std::isspace(static_cast<unsigned char>(seq[p])) && seq[p] != '[' && seq[p] != ']')
            ++p;
        return seq.substr(b, p - b);
    };
    for (skip(); p < seq.size(); skip()) {
        if (seq[p] == '[') {
            ++p;
            LetterSet y = 0;
            for (skip(); p < seq.size() && seq[p] != ']'; skip()) {
                std::string t = token();
                if (t.empty()) throw ParseError("malformed star set in '" + seq + "'");
                y |= singleton(ambient.letter(t));
            }
            if (p == seq.size()) throw ParseError("unterminated '[' in '" + seq + "'");
            ++p;
            e.atoms.push_back(IdealAtom::star_of(y));
        } else {
            std::string t = token();
            if (t.size() < 2 || t.back() != '?') throw ParseError("expected 'x?' or '[...]', got '" + t + "'");
            e.atoms.push_back(IdealAtom::optional(ambient.letter(t.substr(0, t.size() - 1))));
        }
    }
    return e;
}

bool ideal_less(const Ideal& a, const Ideal& b) { return format_ideal(a) < format_ideal(b); }

std::vector<Ideal> maximal_ideals(std::vector<Ideal> ideals) {
    std::sort(ideals.begin(), ideals.end(), ideal_less);
    ideals.erase(std::unique(ideals.begin(), ideals.end()), ideals.end());
    std::vector<bool> drop(ideals.size(), false);
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        for (std::size_t j = 0; j < ideals.size() && !drop[i]; ++j) {
            if (i == j || drop[j]) continue;
            if (!ideal_inclusion(ideals[i], ideals[j])) continue;
            // equal languages: keep the earlier one
            if (ideal_inclusion(ideals[j], ideals[i]) && i < j) continue;
            drop[i] = true;
        }
    }
    std::vector<Ideal> out;
    for (std::size_t i = 0; i < ideals.size(); ++i)
        if (!drop[i]) out.push_back(std::move(ideals[i]));
    return out;
}

std::vector<Ideal> candidate_ideals(const Alphabet& ambient, std::size_t len) {
    check_width(ambient);
    const std::size_t sigma = ambient.size();
    if (sigma > 16) throw ResourceError("candidate enumeration over more than 16 letters");
    const LetterSet nsets = LetterSet{1} << sigma;
    std::vector<Ideal> out;
    Ideal cur{ambient, std::vector<LetterSet>(len + 1, 0), std::vector<Letter>(len, 0)};
    const std::uint64_t cap = resource_cap();

    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == 2 * len + 1) {
            if (normalize(to_expr(cur)) == cur) {
                out.push_back(cur);
                if (out.size() > cap) throw ResourceError("candidate ideal count exceeds resource cap");
            }
            return;
        }
        if (pos % 2 == 0) {
            for (LetterSet y = 0; y < nsets; ++y) {
                // prune early: optional letter before this star must not be absorbed by it
                if (pos > 0 && has(y, cur.opts[pos / 2 - 1])) continue;
                cur.stars[pos / 2] = y;
                rec(pos + 1);
            }
        } else {
            for (std::size_t a = 0; a < sigma; ++a) {
                cur.opts[pos / 2] = static_cast<Letter>(a);
                rec(pos + 1);
            }
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), ideal_less);
    return out;
}

Nfa union_nfa(const std::vector<Ideal>& ideals, const Alphabet& ambient) {
    Nfa u(ambient, 1);
    for (const auto& i : ideals) {
        require_same(i.ambient, ambient);
        Dfa d = ordered_dfa(i);
        const int base = u.num_states;
        // drop the sink
        for (int s = 0; s + 1 < d.num_states; ++s) {
            u.add_state();
            u.set_final(base + s);
        }
        u.add(0, EPS, base);
        for (int s = 0; s + 1 < d.num_states; ++s)
            for (std::size_t a = 0; a < ambient.size(); ++a) {
                int t = d.next(s, static_cast<Letter>(a));
                if (t + 1 < d.num_states) u.add(base + s, static_cast<Letter>(a), base + t);
            }
    }
    return u;
}

std::vector<Ideal> decompose_downward_closed(const Nfa& input) {
    check_width(input.alphabet);
    const Nfa a = trim(input);
    const int n = a.num_states;
    const auto out = out_edges(a);

    // Tarjan SCCs; components come out in reverse topological order
    std::vector<int> comp(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n)),
        idx(static_cast<std::size_t>(n), -1);
    std::vector<int> stack;
    std::vector<bool> on(static_cast<std::size_t>(n), false);
    int counter = 0, ncomp = 0;
    std::function<void(int)> dfs = [&](int v) {
        const auto sv = static_cast<std::size_t>(v);
        idx[sv] = low[sv] = counter++;
        stack.push_back(v);
        on[sv] = true;
        for (const auto& t : out[sv]) {
            const auto st = static_cast<std::size_t>(t.to);
            if (idx[st] < 0) {
                dfs(t.to);
                low[sv] = std::min(low[sv], low[st]);
            } else if (on[st]) {
                low[sv] = std::min(low[sv], idx[st]);
            }
        }
        if (low[sv] == idx[sv]) {
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on[static_cast<std::size_t>(w)] = false;
                comp[static_cast<std::size_t>(w)] = ncomp;
            } while (w != v);
            ++ncomp;
        }
    };
    for (int v = 0; v < n; ++v)
        if (idx[static_cast<std::size_t>(v)] < 0) dfs(v);

    std::vector<LetterSet> inner(static_cast<std::size_t>(ncomp), 0);
    std::vector<bool> has_final(static_cast<std::size_t>(ncomp), false);
    std::vector<std::set<std::pair<Letter, int>>> exits(static_cast<std::size_t>(ncomp));
    for (int v = 0; v < n; ++v) {
        const auto cv = static_cast<std::size_t>(comp[static_cast<std::size_t>(v)]);
        if (a.is_final(v)) has_final[cv] = true;
        for (const auto& t : out[static_cast<std::size_t>(v)]) {
            const int ct = comp[static_cast<std::size_t>(t.to)];
            if (static_cast<std::size_t>(ct) == cv) {
                if (t.label != EPS) inner[cv] |= singleton(t.label);
            } else {
                exits[cv].insert({t.label, ct});
            }
        }
    }

    // components are numbered so that successors come first
    std::vector<std::vector<Ideal>> from(static_cast<std::size_t>(ncomp));
    for (int c = 0; c < ncomp; ++c) {
        const auto sc = static_cast<std::size_t>(c);
        std::vector<Ideal> acc;
        if (has_final[sc]) acc.push_back(normalize({a.alphabet, {IdealAtom::star_of(inner[sc])}}));
        for (const auto& [label, target] : exits[sc]) {
            for (const auto& rest : from[static_cast<std::size_t>(target)]) {
                IdealExpr e{a.alphabet, {IdealAtom::star_of(inner[sc])}};
                if (label != EPS) e.atoms.push_back(IdealAtom::optional(label));
                auto tail = to_expr(rest).atoms;
                e.atoms.insert(e.atoms.end(), tail.begin(), tail.end());
                acc.push_back(normalize(e));
            }
        }
        from[sc] = maximal_ideals(std::move(acc));
        if (from[sc].size() > resource_cap()) throw ResourceError("ideal decomposition exceeds resource cap");
    }

    std::vector<Ideal> result = from[static_cast<std::size_t>(comp[static_cast<std::size_t>(a.initial)])];
    for (const auto& i : result)
        if (!nfa_inclusion(dfa_to_nfa(ordered_dfa(i)), a))
            throw Error("language is not downward closed: ideal " + format_ideal(i) + " escapes it");
    if (!nfa_inclusion(a, union_nfa(result, a.alphabet)))
        throw Error("ideal decomposition does not cover the language");
    return result;
}

BigInt small_alphabet_bound(std::uint64_t alpha_size, std::uint64_t ideal_len_bound) {
    BigInt r = alpha_size;
    for (std::uint64_t i = 0; i < alpha_size; ++i) r *= BigInt(ideal_len_bound + 1);
    return r;
}

BigInt f_bound(std::uint64_t n, std::uint64_t k) {
    BigInt sum = 0, p = 1;
    BigInt base = n == 0 ? BigInt(-1) : BigInt(n - 1);
    for (std::uint64_t i = 1; i <= k; ++i) {
        p *= base;
        sum += p;
    }
    return sum;
}

std::optional<std::size_t> verify_cycling(const Word& w, std::size_t n, std::size_t alpha_size) {
    if (n == 0 || n > 3 || alpha_size == 0 || alpha_size > 2)
        throw Error("verify_cycling supports 1 <= n <= 3 and 1 <= |X| <= 2");
    for (Letter c : w)
        if (c < 0 || static_cast<std::size_t>(c) >= alpha_size) throw Error("word letter outside alphabet");

    std::vector<bool> alive(w.size(), true);
    std::vector<std::size_t> delta(n * alpha_size);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t a = 0; a < alpha_size; ++a) delta[s * alpha_size + a] = s;

    // odometer over all upward-closed transition tables
    while (true) {
        for (std::size_t init = 0; init < n; ++init) {
            std::size_t s = init;
            for (std::size_t p = 0; p < w.size(); ++p) {
                std::size_t t = delta[s * alpha_size + static_cast<std::size_t>(w[p])];
                if (t != s) alive[p] = false;
                s = t;
            }
        }
        std::size_t pos = 0;
        while (pos < delta.size()) {
            std::size_t s = pos / alpha_size;
            if (delta[pos] + 1 < n) {
                ++delta[pos];
                break;
            }
            delta[pos] = s;
            ++pos;
        }
        if (pos == delta.size()) break;
    }
    for (std::size_t p = 0; p < w.size(); ++p)
        if (alive[p]) return p;
    return std::nullopt;
}

}  // namespace subword
