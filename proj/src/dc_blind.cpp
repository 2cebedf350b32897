#include "subword/blind.hpp"

#include "bitset.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace subword {

using detail::Bits;

BigInt worst_case_capacity(std::uint64_t n, std::uint64_t k) {
    BigInt base = 3 * n;
    return BigInt(n) + BigInt(n) * boost::multiprecision::pow(base, static_cast<unsigned>((k + 1) * (k + 1)));
}

BigInt dc_state_bound(std::uint64_t n, std::uint64_t k) {
    BigInt base = 3 * n;
    return boost::multiprecision::pow(base, static_cast<unsigned>(5 * n * k + 7 * k * k * k));
}

BigInt instance_capacity(const BlindAutomaton& a) {
    std::vector<IntVec> effects;
    for (const auto& c : simple_cycles(a)) {
        auto e = effect(a, c);
        if (std::find(effects.begin(), effects.end(), e) == effects.end()) effects.push_back(e);
    }
    const BigInt n = a.num_states;
    if (effects.empty()) return n - 1 + n * n;
    BigInt maxnorm = 0, row = 0;
    for (const auto& e : effects) maxnorm = std::max(maxnorm, norm_inf(e));
    for (int i = 0; i < a.k; ++i) {
        BigInt s = 0;
        for (const auto& e : effects) s += abs(e[static_cast<std::size_t>(i)]);
        row = std::max(row, s);
    }
    const auto r = rank_of(effects);
    // residual prefix, open frames, then the precise cycles picked by the Pottier bound
    return (n - 1) + n * n + maxnorm * boost::multiprecision::pow(1 + row + n - 1, static_cast<unsigned>(r + 1));
}

namespace {

using Vec = std::vector<std::int64_t>;

// precise frames of the simple construction feed v directly and keep u = 0
struct Frame {
    int r;
    bool precise;
    Vec u;
    Bits seen;
};

struct State {
    int q;
    Bits residual;
    std::vector<Frame> stack;
    Vec v;
    std::vector<Vec> s, t;
};

Vec encode(const State& st) {
    Vec key;
    key.push_back(st.q);
    for (auto w : st.residual.w) key.push_back(static_cast<std::int64_t>(w));
    key.push_back(static_cast<std::int64_t>(st.stack.size()));
    for (const auto& f : st.stack) {
        key.push_back(f.r);
        key.push_back(f.precise);
        key.insert(key.end(), f.u.begin(), f.u.end());
        for (auto w : f.seen.w) key.push_back(static_cast<std::int64_t>(w));
    }
    key.insert(key.end(), st.v.begin(), st.v.end());
    for (const auto* set : {&st.s, &st.t}) {
        key.push_back(static_cast<std::int64_t>(set->size()));
        for (const auto& x : *set) key.insert(key.end(), x.begin(), x.end());
    }
    return key;
}

IntVec big(const Vec& v) { return IntVec(v.begin(), v.end()); }

std::vector<IntVec> big(const std::vector<Vec>& vs) {
    std::vector<IntVec> out;
    for (const auto& v : vs) out.push_back(big(v));
    return out;
}

bool independent_with(const std::vector<Vec>& set, const Vec& u) {
    auto b = big(set);
    b.push_back(big(u));
    return linearly_independent(b);
}

void insert_sorted(std::vector<Vec>& set, const Vec& u) {
    auto it = std::lower_bound(set.begin(), set.end(), u);
    if (it == set.end() || *it != u) set.insert(it, u);
}

class Builder {
public:
    Builder(const BlindAutomaton& a, const DcOptions& opts, std::int64_t cap)
        : a_(a), opts_(opts), cap_(cap), n_(static_cast<std::size_t>(a.num_states)),
          k_(static_cast<std::size_t>(a.k)) {
        out_.resize(n_);
        for (std::size_t i = 0; i < a.transitions.size(); ++i)
            out_[static_cast<std::size_t>(a.transitions[i].from)].push_back(i);
    }

    Nfa build(std::uint64_t& states, std::uint64_t& transitions) {
        Nfa result(a_.alphabet, 0);
        State init{a_.initial, Bits(n_), {}, Vec(k_, 0), {}, {}};
        init.residual.set(static_cast<std::size_t>(a_.initial));
        intern(init, result);
        for (std::size_t id = 0; id < states_.size(); ++id) {
            const State cur = states_[id];
            const int from = static_cast<int>(id);
            if (is_final(cur)) result.set_final(from);
            expand(cur, from, result);
        }
        states = states_.size();
        transitions = result.transitions.size();
        return result;
    }

private:
    const BlindAutomaton& a_;
    const DcOptions& opts_;
    std::int64_t cap_;
    std::size_t n_, k_;
    std::vector<std::vector<std::size_t>> out_;
    std::unordered_map<Vec, int, detail::VecHash<std::int64_t>> ids_;
    std::vector<State> states_;
    std::map<std::pair<std::vector<Vec>, std::vector<Vec>>, bool> cancel_cache_;

    int intern(const State& st, Nfa& result) {
        auto [it, fresh] = ids_.emplace(encode(st), static_cast<int>(states_.size()));
        if (fresh) {
            states_.push_back(st);
            result.add_state();
            if (states_.size() > resource_cap()) throw ResourceError("resource cap exceeded building the closure automaton");
        }
        return it->second;
    }

    bool is_final(const State& st) {
        if (!st.stack.empty() || !a_.is_final(st.q)) return false;
        for (auto x : st.v)
            if (x != 0) return false;
        auto key = std::make_pair(st.s, st.t);
        auto it = cancel_cache_.find(key);
        if (it != cancel_cache_.end()) return it->second;
        bool c = is_cancellable(big(st.s), big(st.t));
        cancel_cache_.emplace(std::move(key), c);
        return c;
    }

    // x + d when it stays within the capacity
    std::vector<Vec> shift(const Vec& v, const Vec& d) const {
        Vec out(k_);
        for (std::size_t i = 0; i < k_; ++i) {
            out[i] = v[i] + d[i];
            if (out[i] > cap_ || out[i] < -cap_) return {};
        }
        return {out};
    }

    static Vec delta_of(const BlindTransition& t) { return Vec(t.delta.begin(), t.delta.end()); }

    void expand(const State& cur, int from, Nfa& result) {
        if (opts_.simple_frames) expand_simple(cur, from, result);
        else expand_literal(cur, from, result);
    }

    std::vector<std::vector<Vec>> t_options(const std::vector<Vec>& t, const Vec& u) const {
        std::vector<std::vector<Vec>> out;
        if (opts_.mode == DcMode::B3) {
            out.push_back(t);
            if (!std::binary_search(t.begin(), t.end(), u) && independent_with(t, u)) {
                out.push_back(t);
                insert_sorted(out.back(), u);
            }
        } else {
            out.push_back(t);
            insert_sorted(out.back(), u);
        }
        return out;
    }

    void add_obligation(std::vector<Vec>& s, const Vec& u) const {
        if (opts_.mode == DcMode::B1) insert_sorted(s, u);
        else if (!std::binary_search(s.begin(), s.end(), u) && independent_with(s, u)) insert_sorted(s, u);
    }

    bool bump(Vec& u, const std::vector<int>& d) const {
        const auto n = static_cast<std::int64_t>(n_);
        for (std::size_t i = 0; i < k_; ++i) {
            u[i] += d[i];
            if (u[i] > n || u[i] < -n) return false;
        }
        return true;
    }

    // a nested cycle never passes through the start of an enclosing one
    static bool ancestor_start(const State& st, int q) {
        for (std::size_t i = 0; i + 1 < st.stack.size(); ++i)
            if (st.stack[i].r == q) return true;
        return false;
    }

    // Top level follows a simple path; each frame follows a simple cycle and is popped by the move
    // that closes it. Whether a cycle is precise is fixed when it is pushed.
    void expand_simple(const State& cur, int from, Nfa& result) {
        if (cur.stack.empty()) {
            for (auto ti : out_[static_cast<std::size_t>(cur.q)]) {
                const auto& t = a_.transitions[ti];
                if (cur.residual.test(static_cast<std::size_t>(t.to))) continue;
                for (auto& v : shift(cur.v, delta_of(t))) {
                    State nx = cur;
                    nx.q = t.to;
                    nx.v = std::move(v);
                    nx.residual.set(static_cast<std::size_t>(t.to));
                    result.add(from, t.label, intern(nx, result));
                }
            }
        }
        // children start at a proper occurrence inside the parent cycle
        if (cur.stack.size() < n_ && (cur.stack.empty() || cur.q != cur.stack.back().r)) {
            for (bool precise : {true, false}) {
                State nx = cur;
                Frame f{cur.q, precise, Vec(k_, 0), Bits(n_)};
                f.seen.set(static_cast<std::size_t>(cur.q));
                nx.stack.push_back(std::move(f));
                result.add(from, EPS, intern(nx, result));
            }
        }
        if (cur.stack.empty()) return;
        const Frame& top = cur.stack.back();
        for (auto ti : out_[static_cast<std::size_t>(cur.q)]) {
            const auto& t = a_.transitions[ti];
            const bool closing = t.to == top.r;
            if (!closing && (top.seen.test(static_cast<std::size_t>(t.to)) || ancestor_start(cur, t.to))) continue;
            if (top.precise) {
                for (auto& v : shift(cur.v, delta_of(t))) {
                    State nx = cur;
                    nx.q = t.to;
                    nx.v = std::move(v);
                    if (closing) nx.stack.pop_back();
                    else nx.stack.back().seen.set(static_cast<std::size_t>(t.to));
                    result.add(from, t.label, intern(nx, result));
                }
                continue;
            }
            Vec u = top.u;
            if (!bump(u, t.delta)) continue;
            State nx = cur;
            nx.q = t.to;
            if (!closing) {
                nx.stack.back().u = std::move(u);
                nx.stack.back().seen.set(static_cast<std::size_t>(t.to));
                result.add(from, t.label, intern(nx, result));
                continue;
            }
            nx.stack.pop_back();
            add_obligation(nx.s, u);
            for (auto& t2 : t_options(cur.t, u)) {
                State ny = nx;
                ny.t = std::move(t2);
                result.add(from, t.label, intern(ny, result));
            }
        }
    }

    // The construction exactly as stated: frames follow arbitrary cycles with effect in [-n,n]^k
    // and are popped by an empty move, choosing precise or obligation there.
    void expand_literal(const State& cur, int from, Nfa& result) {
        if (cur.stack.empty()) {
            for (auto ti : out_[static_cast<std::size_t>(cur.q)]) {
                const auto& t = a_.transitions[ti];
                for (auto& v : shift(cur.v, delta_of(t))) {
                    State nx = cur;
                    nx.q = t.to;
                    nx.v = std::move(v);
                    result.add(from, t.label, intern(nx, result));
                }
            }
        }
        if (cur.stack.size() < n_) {
            State nx = cur;
            nx.stack.push_back(Frame{cur.q, false, Vec(k_, 0), Bits()});
            result.add(from, EPS, intern(nx, result));
        }
        if (cur.stack.empty()) return;
        const Frame& top = cur.stack.back();
        for (auto ti : out_[static_cast<std::size_t>(cur.q)]) {
            const auto& t = a_.transitions[ti];
            Vec u = top.u;
            if (!bump(u, t.delta)) continue;
            State nx = cur;
            nx.q = t.to;
            nx.stack.back().u = std::move(u);
            result.add(from, t.label, intern(nx, result));
        }
        if (cur.q != top.r) return;
        State base = cur;
        base.stack.pop_back();
        for (auto& t : t_options(cur.t, top.u)) {
            for (auto& v : shift(cur.v, top.u)) {
                State nx = base;
                nx.v = std::move(v);
                nx.t = t;
                result.add(from, EPS, intern(nx, result));
            }
            State nx = base;
            nx.t = t;
            add_obligation(nx.s, top.u);
            result.add(from, EPS, intern(nx, result));
        }
    }
};

}  // namespace

Nfa dc_nfa(const BlindAutomaton& a, const DcOptions& opts, DcStats* stats) {
    a.validate();
    DcStats local;
    DcStats& st = stats ? *stats : local;
    st = DcStats{};

    auto build = [&](const BigInt& c) {
        if (c > BigInt(std::int64_t{1} << 40)) throw ResourceError("counter capacity too large to simulate");
        st.capacity = c;
        ++st.rounds;
        Builder b(a, opts, static_cast<std::int64_t>(c));
        return downward_close_nfa(trim(b.build(st.states, st.transitions)));
    };

    if (opts.capacity) return build(*opts.capacity);

    const BigInt bound = opts.simple_frames ? instance_capacity(a)
                                            : worst_case_capacity(static_cast<std::uint64_t>(a.num_states),
                                                             static_cast<std::uint64_t>(a.k));
    BigInt c = 0;
    while (true) {
        if (c >= bound) {
            st.reached_bound = true;
            return build(bound);
        }
        Nfa u = build(c);
        // L(u) is downward closed, so its complement DFA only has self-loops as cycles and the
        // product with a stays small enough for the exact emptiness check
        const Nfa outside = dfa_to_nfa(complement(determinize(u)));
        if (!accepting_walk(blind_product(a, outside))) return u;
        c = c == 0 ? BigInt(1) : BigInt(2 * c);
    }
}

}  // namespace subword
