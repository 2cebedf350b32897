#include "subword/blind.hpp"

#include "bitset.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace subword {

using detail::Bits;
using detail::VecHash;

int BlindAutomaton::add_state() {
    finals.push_back(false);
    if (!names.empty()) names.push_back("s" + std::to_string(num_states));
    return num_states++;
}

void BlindAutomaton::validate() const {
    if (num_states < 1) throw Error("automaton needs at least one state");
    if (k < 0) throw Error("negative counter count");
    if (finals.size() != static_cast<std::size_t>(num_states)) throw Error("final-state vector has wrong size");
    if (initial < 0 || initial >= num_states) throw Error("initial state out of range");
    for (const auto& t : transitions) {
        if (t.from < 0 || t.from >= num_states || t.to < 0 || t.to >= num_states)
            throw Error("transition endpoint is not a declared state");
        if (t.label != EPS && (t.label < 0 || static_cast<std::size_t>(t.label) >= alphabet.size()))
            throw Error("transition label outside the alphabet");
        if (t.delta.size() != static_cast<std::size_t>(k)) throw Error("counter update has wrong dimension");
        for (int d : t.delta)
            if (d < -1 || d > 1) throw Error("counter update outside {-1,0,1}");
    }
}

std::string BlindAutomaton::state_name(int q) const {
    if (static_cast<std::size_t>(q) < names.size()) return names[static_cast<std::size_t>(q)];
    return "q" + std::to_string(q);
}

bool is_chained(const BlindAutomaton& a, const Walk& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] >= a.transitions.size()) return false;
        if (i > 0 && a.transitions[w[i - 1]].to != a.transitions[w[i]].from) return false;
    }
    return true;
}

IntVec effect(const BlindAutomaton& a, const Walk& w) {
    if (!is_chained(a, w)) throw Error("walk transitions do not chain");
    IntVec e = zero_vec(static_cast<std::size_t>(a.k));
    for (auto i : w)
        for (int c = 0; c < a.k; ++c) e[static_cast<std::size_t>(c)] += a.transitions[i].delta[static_cast<std::size_t>(c)];
    return e;
}

Word walk_word(const BlindAutomaton& a, const Walk& w) {
    Word out;
    for (auto i : w)
        if (a.transitions[i].label != EPS) out.push_back(a.transitions[i].label);
    return out;
}

int walk_start(const BlindAutomaton& a, const Walk& w, int fallback) {
    return w.empty() ? fallback : a.transitions[w.front()].from;
}

int walk_end(const BlindAutomaton& a, const Walk& w, int fallback) {
    return w.empty() ? fallback : a.transitions[w.back()].to;
}

bool is_accepting_walk(const BlindAutomaton& a, const Walk& w) {
    if (!is_chained(a, w)) return false;
    if (walk_start(a, w, a.initial) != a.initial) return false;
    if (!a.is_final(walk_end(a, w, a.initial))) return false;
    auto e = effect(a, w);
    return std::all_of(e.begin(), e.end(), [](const BigInt& x) { return x == 0; });
}

namespace {

// configurations (state, counters) with the fewest trailing empty moves used to reach them
using Config = std::vector<int>;  // [state, c_1..c_k]
using ConfigSet = std::map<Config, int>;

ConfigSet eps_saturate(const BlindAutomaton& a, const std::vector<std::vector<std::size_t>>& out, ConfigSet set,
                       int cbound, int ebound) {
    std::deque<Config> work;
    for (const auto& [c, e] : set) work.push_back(c);
    while (!work.empty()) {
        Config c = work.front();
        work.pop_front();
        int e = set[c];
        if (e >= ebound) continue;
        for (auto ti : out[static_cast<std::size_t>(c[0])]) {
            const auto& t = a.transitions[ti];
            if (t.label != EPS) continue;
            Config n = c;
            n[0] = t.to;
            bool ok = true;
            for (int i = 0; i < a.k; ++i) {
                n[static_cast<std::size_t>(i) + 1] += t.delta[static_cast<std::size_t>(i)];
                if (std::abs(n[static_cast<std::size_t>(i) + 1]) > cbound) ok = false;
            }
            if (!ok) continue;
            auto it = set.find(n);
            if (it == set.end() || it->second > e + 1) {
                set[n] = e + 1;
                work.push_back(n);
            }
        }
    }
    return set;
}

ConfigSet step_letter(const BlindAutomaton& a, const std::vector<std::vector<std::size_t>>& out, const ConfigSet& set,
                      Letter x, int cbound, int ebound) {
    ConfigSet next;
    for (const auto& [c, e] : set) {
        for (auto ti : out[static_cast<std::size_t>(c[0])]) {
            const auto& t = a.transitions[ti];
            if (t.label != x) continue;
            Config n = c;
            n[0] = t.to;
            bool ok = true;
            for (int i = 0; i < a.k; ++i) {
                n[static_cast<std::size_t>(i) + 1] += t.delta[static_cast<std::size_t>(i)];
                if (std::abs(n[static_cast<std::size_t>(i) + 1]) > cbound) ok = false;
            }
            if (ok) next[n] = 0;
        }
    }
    return eps_saturate(a, out, std::move(next), cbound, ebound);
}

bool accepting_config(const BlindAutomaton& a, const ConfigSet& set) {
    for (const auto& [c, e] : set) {
        if (!a.is_final(c[0])) continue;
        if (std::all_of(c.begin() + 1, c.end(), [](int v) { return v == 0; })) return true;
    }
    return false;
}

std::vector<std::vector<std::size_t>> blind_out(const BlindAutomaton& a) {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(a.num_states));
    for (std::size_t i = 0; i < a.transitions.size(); ++i)
        out[static_cast<std::size_t>(a.transitions[i].from)].push_back(i);
    return out;
}

ConfigSet initial_configs(const BlindAutomaton& a, const std::vector<std::vector<std::size_t>>& out, int cbound,
                          int ebound) {
    Config c(static_cast<std::size_t>(a.k) + 1, 0);
    c[0] = a.initial;
    ConfigSet s;
    s[c] = 0;
    return eps_saturate(a, out, std::move(s), cbound, ebound);
}

}  // namespace

bool accepts_bounded(const BlindAutomaton& a, const Word& w, int cbound, int ebound) {
    a.validate();
    const auto out = blind_out(a);
    ConfigSet cur = initial_configs(a, out, cbound, ebound);
    for (Letter x : w) {
        cur = step_letter(a, out, cur, x, cbound, ebound);
        if (cur.empty()) return false;
    }
    return accepting_config(a, cur);
}

std::vector<Word> enumerate_bounded(const BlindAutomaton& a, std::size_t maxlen, int cbound, int ebound) {
    a.validate();
    const auto out = blind_out(a);
    std::vector<Word> result;
    std::uint64_t budget = 0;
    std::vector<std::pair<Word, ConfigSet>> level{{Word{}, initial_configs(a, out, cbound, ebound)}};
    for (std::size_t len = 0; !level.empty(); ++len) {
        for (const auto& [w, set] : level)
            if (accepting_config(a, set)) result.push_back(w);
        if (len == maxlen) break;
        std::vector<std::pair<Word, ConfigSet>> next;
        for (const auto& [w, set] : level)
            for (std::size_t x = 0; x < a.alphabet.size(); ++x) {
                auto s = step_letter(a, out, set, static_cast<Letter>(x), cbound, ebound);
                if (s.empty()) continue;
                if (++budget > resource_cap()) throw ResourceError("resource cap exceeded in bounded enumeration");
                Word v = w;
                v.push_back(static_cast<Letter>(x));
                next.emplace_back(std::move(v), std::move(s));
            }
        level.swap(next);
    }
    std::sort(result.begin(), result.end(), shortlex_less);
    return result;
}

Nfa underlying_nfa(const BlindAutomaton& a) {
    Nfa n(a.alphabet, a.num_states);
    n.initial = a.initial;
    n.finals = a.finals;
    n.names = a.names;
    for (const auto& t : a.transitions) n.add(t.from, t.label, t.to);
    return n;
}

BlindAutomaton blind_product(const BlindAutomaton& a, const Nfa& n) {
    require_same(a.alphabet, n.alphabet);
    a.validate();
    n.validate();
    const auto aout = blind_out(a);
    const auto nout = out_edges(n);
    BlindAutomaton p(a.alphabet, a.k, 0);
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int q, int r) {
        auto [it, fresh] = id.emplace(std::make_pair(q, r), static_cast<int>(pairs.size()));
        if (fresh) {
            pairs.push_back({q, r});
            p.add_state();
            p.set_final(it->second, a.is_final(q) && n.is_final(r));
            if (pairs.size() > resource_cap()) throw ResourceError("resource cap exceeded in blind product");
        }
        return it->second;
    };
    intern(a.initial, n.initial);
    const std::vector<int> zero(static_cast<std::size_t>(a.k), 0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [q, r] = pairs[i];
        for (auto ti : aout[static_cast<std::size_t>(q)]) {
            const auto& t = a.transitions[ti];
            if (t.label == EPS) {
                int to = intern(t.to, r);
                p.add(static_cast<int>(i), EPS, t.delta, to);
                continue;
            }
            for (const auto& nt : nout[static_cast<std::size_t>(r)])
                if (nt.label == t.label) {
                    int to = intern(t.to, nt.to);
                    p.add(static_cast<int>(i), t.label, t.delta, to);
                }
        }
        for (const auto& nt : nout[static_cast<std::size_t>(r)])
            if (nt.label == EPS) {
                int to = intern(q, nt.to);
                p.add(static_cast<int>(i), EPS, zero, to);
            }
    }
    p.initial = 0;
    return p;
}

std::vector<Walk> simple_cycles(const BlindAutomaton& a) {
    const auto out = blind_out(a);
    std::vector<Walk> cycles;
    std::vector<char> on(static_cast<std::size_t>(a.num_states), 0);
    Walk path;
    for (int s = 0; s < a.num_states; ++s) {
        std::function<void(int)> dfs = [&](int q) {
            for (auto ti : out[static_cast<std::size_t>(q)]) {
                const int to = a.transitions[ti].to;
                if (to == s) {
                    path.push_back(ti);
                    cycles.push_back(path);
                    path.pop_back();
                    if (cycles.size() > resource_cap()) throw ResourceError("resource cap exceeded enumerating cycles");
                } else if (to > s && !on[static_cast<std::size_t>(to)]) {
                    on[static_cast<std::size_t>(to)] = 1;
                    path.push_back(ti);
                    dfs(to);
                    path.pop_back();
                    on[static_cast<std::size_t>(to)] = 0;
                }
            }
        };
        on[static_cast<std::size_t>(s)] = 1;
        dfs(s);
        on[static_cast<std::size_t>(s)] = 0;
    }
    return cycles;
}

namespace {

std::vector<bool> useful_states(const BlindAutomaton& a) {
    const std::size_t n = static_cast<std::size_t>(a.num_states);
    std::vector<std::vector<int>> fwd(n), bwd(n);
    for (const auto& t : a.transitions) {
        fwd[static_cast<std::size_t>(t.from)].push_back(t.to);
        bwd[static_cast<std::size_t>(t.to)].push_back(t.from);
    }
    auto sweep = [&](const std::vector<std::vector<int>>& g, std::vector<int> start) {
        std::vector<bool> seen(n, false);
        for (int s : start) seen[static_cast<std::size_t>(s)] = true;
        while (!start.empty()) {
            int q = start.back();
            start.pop_back();
            for (int r : g[static_cast<std::size_t>(q)])
                if (!seen[static_cast<std::size_t>(r)]) {
                    seen[static_cast<std::size_t>(r)] = true;
                    start.push_back(r);
                }
        }
        return seen;
    };
    auto reach = sweep(fwd, {a.initial});
    std::vector<int> fin;
    for (int q = 0; q < a.num_states; ++q)
        if (a.is_final(q)) fin.push_back(q);
    auto coreach = sweep(bwd, fin);
    std::vector<bool> use(n);
    for (std::size_t q = 0; q < n; ++q) use[q] = reach[q] && coreach[q];
    return use;
}

Bits states_of(const BlindAutomaton& a, const Walk& w, int start) {
    Bits b(static_cast<std::size_t>(a.num_states));
    b.set(static_cast<std::size_t>(start));
    for (auto i : w) b.set(static_cast<std::size_t>(a.transitions[i].to));
    return b;
}

// splice `count` copies of cycle c into w at the first position whose state lies on c
bool splice(const BlindAutomaton& a, Walk& w, int start, const Walk& c, std::int64_t count) {
    std::vector<int> at(w.size() + 1);
    at[0] = start;
    for (std::size_t i = 0; i < w.size(); ++i) at[i + 1] = a.transitions[w[i]].to;
    for (std::size_t pos = 0; pos < at.size(); ++pos) {
        for (std::size_t r = 0; r < c.size(); ++r) {
            if (a.transitions[c[r]].from != at[pos]) continue;
            Walk rot(c.begin() + static_cast<std::ptrdiff_t>(r), c.end());
            rot.insert(rot.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(r));
            Walk ins;
            for (std::int64_t m = 0; m < count; ++m) ins.insert(ins.end(), rot.begin(), rot.end());
            w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos), ins.begin(), ins.end());
            return true;
        }
    }
    return false;
}

}  // namespace

std::optional<Walk> accepting_walk(const BlindAutomaton& a) {
    a.validate();
    const auto use = useful_states(a);
    if (!use[static_cast<std::size_t>(a.initial)]) return std::nullopt;
    const auto out = blind_out(a);
    const std::size_t k = static_cast<std::size_t>(a.k);

    std::vector<Walk> cycles;
    for (auto& c : simple_cycles(a))
        if (use[static_cast<std::size_t>(a.transitions[c.front()].from)]) cycles.push_back(std::move(c));
    std::vector<Bits> cstates;
    std::vector<IntVec> ceff;
    for (const auto& c : cycles) {
        cstates.push_back(states_of(a, c, a.transitions[c.front()].from));
        ceff.push_back(effect(a, c));
    }

    // simple paths, deduplicated by (visited states, effect)
    std::map<std::pair<std::vector<std::uint64_t>, IntVec>, Walk> paths;
    {
        std::uint64_t budget = 0;
        std::vector<char> on(static_cast<std::size_t>(a.num_states), 0);
        Walk path;
        IntVec eff = zero_vec(k);
        std::function<void(int)> dfs = [&](int q) {
            if (++budget > resource_cap()) throw ResourceError("resource cap exceeded enumerating paths");
            if (a.is_final(q)) paths.emplace(std::make_pair(states_of(a, path, a.initial).w, eff), path);
            for (auto ti : out[static_cast<std::size_t>(q)]) {
                const auto& t = a.transitions[ti];
                if (!use[static_cast<std::size_t>(t.to)] || on[static_cast<std::size_t>(t.to)]) continue;
                on[static_cast<std::size_t>(t.to)] = 1;
                path.push_back(ti);
                for (std::size_t i = 0; i < k; ++i) eff[i] += t.delta[i];
                dfs(t.to);
                for (std::size_t i = 0; i < k; ++i) eff[i] -= t.delta[i];
                path.pop_back();
                on[static_cast<std::size_t>(t.to)] = 0;
            }
        };
        on[static_cast<std::size_t>(a.initial)] = 1;
        dfs(a.initial);
    }

    std::uint64_t budget = 0;
    for (const auto& [key, path] : paths) {
        Bits vp;
        vp.w = key.first;
        std::vector<std::size_t> others;
        for (std::size_t c = 0; c < cycles.size(); ++c)
            if (!cstates[c].intersects(vp)) others.push_back(c);

        // connected extensions D of the path by cycles it does not touch; each is used at least once
        std::set<std::vector<std::size_t>> seen_d;
        std::deque<std::vector<std::size_t>> queue{{}};
        seen_d.insert({});
        while (!queue.empty()) {
            auto d = queue.front();
            queue.pop_front();
            if (++budget > resource_cap()) throw ResourceError("resource cap exceeded in emptiness check");
            Bits v = vp;
            IntVec rhs = key.second;
            for (auto c : d) {
                for (std::size_t i = 0; i < v.w.size(); ++i) v.w[i] |= cstates[c].w[i];
                rhs = add(rhs, ceff[c]);
            }
            rhs = neg(rhs);

            std::vector<std::size_t> free;
            std::map<IntVec, std::size_t> by_effect;
            for (std::size_t c = 0; c < cycles.size(); ++c)
                if (cstates[c].intersects(v) && by_effect.emplace(ceff[c], c).second) free.push_back(c);
            std::vector<IntVec> cols;
            for (auto c : free) cols.push_back(ceff[c]);
            auto sol = solve_nonneg(from_columns(cols, k), cols.size(), rhs);
            if (sol) {
                Walk w = path;
                std::vector<std::pair<std::size_t, std::int64_t>> pending;
                for (auto c : d) pending.push_back({c, 1});
                for (std::size_t j = 0; j < free.size(); ++j)
                    if ((*sol)[j] > 0) pending.push_back({free[j], (*sol)[j]});
                while (!pending.empty()) {
                    bool progress = false;
                    for (std::size_t i = 0; i < pending.size();) {
                        if (splice(a, w, a.initial, cycles[pending[i].first], pending[i].second)) {
                            pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
                            progress = true;
                        } else {
                            ++i;
                        }
                    }
                    if (!progress) throw Error("internal: disconnected cycle set");
                }
                return w;
            }

            for (auto c : others) {
                if (std::find(d.begin(), d.end(), c) != d.end() || !cstates[c].intersects(v)) continue;
                auto e = d;
                e.push_back(c);
                std::sort(e.begin(), e.end());
                if (seen_d.insert(e).second) queue.push_back(std::move(e));
            }
        }
    }
    return std::nullopt;
}

namespace {

Nfa chain_nfa(const Alphabet& x, const Word& w) {
    Nfa n(x, static_cast<int>(w.size()) + 1);
    for (std::size_t i = 0; i < w.size(); ++i) n.add(static_cast<int>(i), w[i], static_cast<int>(i) + 1);
    n.set_final(static_cast<int>(w.size()));
    return n;
}

// greedy embedding of w: deterministic, accepts exactly the superwords of w
Nfa superword_nfa(const Alphabet& x, const Word& w) {
    const int m = static_cast<int>(w.size());
    Nfa n(x, m + 1);
    for (int i = 0; i <= m; ++i)
        for (std::size_t c = 0; c < x.size(); ++c) {
            Letter l = static_cast<Letter>(c);
            n.add(i, l, (i < m && w[static_cast<std::size_t>(i)] == l) ? i + 1 : i);
        }
    n.set_final(m);
    return n;
}

}  // namespace

bool blind_member(const BlindAutomaton& a, const Word& w) {
    return accepting_walk(blind_product(a, chain_nfa(a.alphabet, w))).has_value();
}

bool blind_closure_member(const BlindAutomaton& a, const Word& w) {
    return accepting_walk(blind_product(a, superword_nfa(a.alphabet, w))).has_value();
}

}  // namespace subword
