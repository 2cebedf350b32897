#include "subword/nfa.hpp"

#include "bitset.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace subword {

using detail::Bits;
using detail::BitsHash;
using detail::VecHash;

int Nfa::add_state() {
    finals.push_back(false);
    if (!names.empty()) names.push_back("s" + std::to_string(num_states));
    return num_states++;
}

void Nfa::validate() const {
    if (num_states < 1) throw Error("automaton needs at least one state");
    if (finals.size() != static_cast<std::size_t>(num_states)) throw Error("final-state vector has wrong size");
    if (initial < 0 || initial >= num_states) throw Error("initial state out of range");
    for (const auto& t : transitions) {
        if (t.from < 0 || t.from >= num_states || t.to < 0 || t.to >= num_states)
            throw Error("transition endpoint is not a declared state");
        if (t.label != EPS && (t.label < 0 || static_cast<std::size_t>(t.label) >= alphabet.size()))
            throw Error("transition label outside the alphabet");
    }
}

std::string Nfa::state_name(int q) const {
    if (static_cast<std::size_t>(q) < names.size()) return names[static_cast<std::size_t>(q)];
    return "q" + std::to_string(q);
}

bool Dfa::order_valid() const {
    if (!ordered_witness) return false;
    const auto& r = *ordered_witness;
    if (r.size() != static_cast<std::size_t>(num_states)) return false;
    for (int q = 0; q < num_states; ++q)
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            int p = next(q, static_cast<Letter>(a));
            if (r[static_cast<std::size_t>(q)] > r[static_cast<std::size_t>(p)]) return false;
            if (p != q && r[static_cast<std::size_t>(q)] == r[static_cast<std::size_t>(p)]) return false;
        }
    return true;
}

std::vector<std::vector<Transition>> out_edges(const Nfa& a) {
    std::vector<std::vector<Transition>> out(static_cast<std::size_t>(a.num_states));
    for (const auto& t : a.transitions) out[static_cast<std::size_t>(t.from)].push_back(t);
    return out;
}

namespace {

std::vector<int> closure_with(const std::vector<std::vector<Transition>>& out, const std::vector<int>& from,
                              bool any_label) {
    std::vector<char> seen(out.size(), 0);
    std::vector<int> stack;
    for (int q : from)
        if (!seen[static_cast<std::size_t>(q)]) {
            seen[static_cast<std::size_t>(q)] = 1;
            stack.push_back(q);
        }
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (const auto& t : out[static_cast<std::size_t>(q)])
            if ((any_label || t.label == EPS) && !seen[static_cast<std::size_t>(t.to)]) {
                seen[static_cast<std::size_t>(t.to)] = 1;
                stack.push_back(t.to);
            }
    }
    std::vector<int> res;
    for (std::size_t q = 0; q < out.size(); ++q)
        if (seen[q]) res.push_back(static_cast<int>(q));
    return res;
}

std::vector<int> post(const std::vector<std::vector<Transition>>& out, const std::vector<int>& from, Letter x) {
    std::vector<int> res;
    for (int q : from)
        for (const auto& t : out[static_cast<std::size_t>(q)])
            if (t.label == x) res.push_back(t.to);
    std::sort(res.begin(), res.end());
    res.erase(std::unique(res.begin(), res.end()), res.end());
    return res;
}

bool any_final(const Nfa& a, const std::vector<int>& s) {
    return std::any_of(s.begin(), s.end(), [&](int q) { return a.is_final(q); });
}

void charge(std::uint64_t& counter, const char* what) {
    if (++counter > resource_cap()) throw ResourceError(std::string("resource cap exceeded in ") + what);
}

}  // namespace

std::vector<int> eps_closure(const Nfa& a, const std::vector<int>& from) {
    return closure_with(out_edges(a), from, false);
}

Nfa downward_close_nfa(const Nfa& a) {
    Nfa b = a;
    std::set<std::pair<int, int>> eps;
    for (const auto& t : a.transitions)
        if (t.label == EPS) eps.insert({t.from, t.to});
    for (const auto& t : a.transitions)
        if (t.label != EPS && eps.insert({t.from, t.to}).second) b.add(t.from, EPS, t.to);
    return b;
}

Dfa determinize(const Nfa& a) {
    a.validate();
    auto out = out_edges(a);
    const std::size_t k = a.alphabet.size();
    std::unordered_map<std::vector<int>, int, VecHash<int>> index;
    std::vector<std::vector<int>> sets;
    Dfa d;
    d.alphabet = a.alphabet;
    auto intern = [&](std::vector<int> s) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(sets.size());
        if (sets.size() >= resource_cap()) throw ResourceError("resource cap exceeded in determinize");
        index.emplace(s, id);
        sets.push_back(std::move(s));
        return id;
    };
    intern(closure_with(out, {a.initial}, false));
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t x = 0; x < k; ++x) {
            auto nxt = closure_with(out, post(out, sets[i], static_cast<Letter>(x)), false);
            int id = intern(std::move(nxt));
            d.delta.push_back(id);
        }
    }
    d.num_states = static_cast<int>(sets.size());
    d.initial = 0;
    d.finals.resize(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) d.finals[i] = any_final(a, sets[i]);
    return d;
}

Dfa complement(const Dfa& d) {
    if (d.delta.size() != static_cast<std::size_t>(d.num_states) * d.alphabet.size())
        throw Error("complement requires a total DFA");
    Dfa c = d;
    c.ordered_witness.reset();
    for (std::size_t i = 0; i < c.finals.size(); ++i) c.finals[i] = !d.finals[i];
    return c;
}

Nfa dfa_to_nfa(const Dfa& d) {
    Nfa n(d.alphabet, d.num_states);
    n.initial = d.initial;
    n.finals = d.finals;
    for (int q = 0; q < d.num_states; ++q)
        for (std::size_t x = 0; x < d.alphabet.size(); ++x) n.add(q, static_cast<Letter>(x), d.next(q, static_cast<Letter>(x)));
    return n;
}

Nfa intersect(const Nfa& a, const Nfa& b) {
    require_same(a.alphabet, b.alphabet);
    auto oa = out_edges(a), ob = out_edges(b);
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> pairs;
    Nfa r(a.alphabet, 0);
    r.num_states = 0;
    auto intern = [&](int p, int q) {
        auto [it, fresh] = index.emplace(std::make_pair(p, q), static_cast<int>(pairs.size()));
        if (fresh) {
            if (pairs.size() >= resource_cap()) throw ResourceError("resource cap exceeded in intersect");
            pairs.push_back({p, q});
            r.add_state();
        }
        return it->second;
    };
    r.initial = intern(a.initial, b.initial);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [p, q] = pairs[i];
        int src = static_cast<int>(i);
        for (const auto& ta : oa[static_cast<std::size_t>(p)]) {
            if (ta.label == EPS) {
                r.add(src, EPS, intern(ta.to, q));
                continue;
            }
            for (const auto& tb : ob[static_cast<std::size_t>(q)])
                if (tb.label == ta.label) r.add(src, ta.label, intern(ta.to, tb.to));
        }
        for (const auto& tb : ob[static_cast<std::size_t>(q)])
            if (tb.label == EPS) r.add(src, EPS, intern(p, tb.to));
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) r.finals[i] = a.is_final(pairs[i].first) && b.is_final(pairs[i].second);
    return r;
}

bool is_empty(const Nfa& a) {
    auto reach = closure_with(out_edges(a), {a.initial}, true);
    return !any_final(a, reach);
}

bool accepts(const Nfa& a, const Word& w) {
    auto out = out_edges(a);
    auto cur = closure_with(out, {a.initial}, false);
    for (Letter x : w) {
        cur = closure_with(out, post(out, cur, x), false);
        if (cur.empty()) return false;
    }
    return any_final(a, cur);
}

bool accepts(const Dfa& d, const Word& w) {
    int q = d.initial;
    for (Letter x : w) q = d.next(q, x);
    return d.finals[static_cast<std::size_t>(q)];
}

Nfa trim(const Nfa& a) {
    auto out = out_edges(a);
    std::vector<std::vector<Transition>> in(static_cast<std::size_t>(a.num_states));
    for (const auto& t : a.transitions) in[static_cast<std::size_t>(t.to)].push_back({t.to, t.label, t.from});
    auto fwd = closure_with(out, {a.initial}, true);
    std::vector<int> fin;
    for (int q = 0; q < a.num_states; ++q)
        if (a.is_final(q)) fin.push_back(q);
    auto bwd = closure_with(in, fin, true);
    std::vector<char> keep(static_cast<std::size_t>(a.num_states), 0);
    std::vector<char> inb(static_cast<std::size_t>(a.num_states), 0);
    for (int q : bwd) inb[static_cast<std::size_t>(q)] = 1;
    for (int q : fwd)
        if (inb[static_cast<std::size_t>(q)]) keep[static_cast<std::size_t>(q)] = 1;
    keep[static_cast<std::size_t>(a.initial)] = 1;
    std::vector<int> id(static_cast<std::size_t>(a.num_states), -1);
    Nfa r(a.alphabet, 0);
    r.num_states = 0;
    bool named = !a.names.empty();
    for (int q = 0; q < a.num_states; ++q)
        if (keep[static_cast<std::size_t>(q)]) {
            id[static_cast<std::size_t>(q)] = r.add_state();
            r.finals[static_cast<std::size_t>(id[static_cast<std::size_t>(q)])] = a.is_final(q);
            if (named) r.names.push_back(a.names[static_cast<std::size_t>(q)]);
        }
    r.initial = id[static_cast<std::size_t>(a.initial)];
    for (const auto& t : a.transitions)
        if (keep[static_cast<std::size_t>(t.from)] && keep[static_cast<std::size_t>(t.to)])
            r.add(id[static_cast<std::size_t>(t.from)], t.label, id[static_cast<std::size_t>(t.to)]);
    return r;
}

std::optional<Word> inclusion_counterexample(const Nfa& a, const Nfa& b) {
    require_same(a.alphabet, b.alphabet);
    auto oa = out_edges(a), ob = out_edges(b);
    std::unordered_map<std::vector<int>, int, VecHash<int>> set_id;
    std::vector<std::vector<int>> sets;
    std::vector<char> set_accepting;
    auto intern_set = [&](std::vector<int> s) {
        auto it = set_id.find(s);
        if (it != set_id.end()) return it->second;
        int id = static_cast<int>(sets.size());
        set_accepting.push_back(any_final(b, s));
        set_id.emplace(s, id);
        sets.push_back(std::move(s));
        return id;
    };
    struct Node {
        int p, s, parent;
        Letter via;
    };
    std::vector<Node> nodes;
    std::map<std::pair<int, int>, int> seen;
    std::deque<int> queue;
    std::uint64_t budget = 0;
    auto word_of = [&](int n) {
        Word w;
        for (; n >= 0; n = nodes[static_cast<std::size_t>(n)].parent)
            if (nodes[static_cast<std::size_t>(n)].via != EPS) w.push_back(nodes[static_cast<std::size_t>(n)].via);
        std::reverse(w.begin(), w.end());
        return w;
    };
    // Discovering a node also discovers its EPS-closure on the left side with the same word.
    auto discover = [&](int p0, int s, int parent, Letter via) -> std::optional<int> {
        std::optional<int> hit;
        for (int p : closure_with(oa, {p0}, false)) {
            if (!seen.emplace(std::make_pair(p, s), static_cast<int>(nodes.size())).second) continue;
            charge(budget, "inclusion check");
            nodes.push_back({p, s, parent, via});
            int id = static_cast<int>(nodes.size()) - 1;
            queue.push_back(id);
            if (!hit && a.is_final(p) && !set_accepting[static_cast<std::size_t>(s)]) hit = id;
        }
        return hit;
    };
    int s0 = intern_set(closure_with(ob, {b.initial}, false));
    if (auto hit = discover(a.initial, s0, -1, EPS)) return word_of(*hit);
    while (!queue.empty()) {
        int n = queue.front();
        queue.pop_front();
        auto [p, s, parent, via] = nodes[static_cast<std::size_t>(n)];
        (void)parent;
        (void)via;
        for (std::size_t x = 0; x < a.alphabet.size(); ++x) {
            std::vector<int> succ_p;
            for (const auto& t : oa[static_cast<std::size_t>(p)])
                if (t.label == static_cast<Letter>(x)) succ_p.push_back(t.to);
            if (succ_p.empty()) continue;
            std::sort(succ_p.begin(), succ_p.end());
            succ_p.erase(std::unique(succ_p.begin(), succ_p.end()), succ_p.end());
            int ns = intern_set(closure_with(ob, post(ob, sets[static_cast<std::size_t>(s)], static_cast<Letter>(x)), false));
            for (int q : succ_p)
                if (auto hit = discover(q, ns, n, static_cast<Letter>(x))) return word_of(*hit);
        }
    }
    return std::nullopt;
}

bool nfa_inclusion(const Nfa& a, const Nfa& b) { return !inclusion_counterexample(a, b).has_value(); }

bool nfa_inclusion_reference(const Nfa& a, const Nfa& b) {
    return is_empty(intersect(a, dfa_to_nfa(complement(determinize(b)))));
}

std::vector<Word> enumerate_upto(const Nfa& a, std::size_t maxlen) {
    constexpr std::uint64_t kCap = 10'000'000;
    auto out = out_edges(a);
    std::vector<Word> result;
    std::vector<std::pair<Word, std::vector<int>>> level{{Word{}, closure_with(out, {a.initial}, false)}};
    std::uint64_t count = 0;
    for (std::size_t len = 0;; ++len) {
        for (const auto& [w, s] : level)
            if (any_final(a, s)) result.push_back(w);
        if (len == maxlen) break;
        std::vector<std::pair<Word, std::vector<int>>> next;
        for (const auto& [w, s] : level)
            for (std::size_t x = 0; x < a.alphabet.size(); ++x) {
                auto ns = closure_with(out, post(out, s, static_cast<Letter>(x)), false);
                if (ns.empty()) continue;
                if (++count > kCap) throw ResourceError("enumerate_upto exceeded 10^7 words");
                Word nw = w;
                nw.push_back(static_cast<Letter>(x));
                next.emplace_back(std::move(nw), std::move(ns));
            }
        if (next.empty()) break;
        level = std::move(next);
    }
    return result;
}

namespace {

struct RejectCore {
    std::vector<std::vector<Transition>> out;
    std::vector<int> accessible;

    explicit RejectCore(const Nfa& a) : out(out_edges(a)), accessible(closure_with(out, {a.initial}, true)) {}

    /// States reachable from P along a path that reads x at least once.
    std::vector<int> step(const std::vector<int>& p, Letter x) const { return closure_with(out, post(out, p, x), true); }
};

}  // namespace

Dfa subset_reject_dfa(const Nfa& a) {
    a.validate();
    RejectCore core(a);
    std::unordered_map<std::vector<int>, int, VecHash<int>> index;
    std::vector<std::vector<int>> sets;
    auto intern = [&](std::vector<int> s) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        if (sets.size() >= resource_cap()) throw ResourceError("resource cap exceeded in subset_reject_dfa");
        int id = static_cast<int>(sets.size());
        index.emplace(s, id);
        sets.push_back(std::move(s));
        return id;
    };
    Dfa d;
    d.alphabet = a.alphabet;
    intern(core.accessible);
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t x = 0; x < a.alphabet.size(); ++x) d.delta.push_back(intern(core.step(sets[i], static_cast<Letter>(x))));
    d.num_states = static_cast<int>(sets.size());
    d.initial = 0;
    d.finals.resize(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) d.finals[i] = !any_final(a, sets[i]);
    return d;
}

WitnessSearch find_short_witness(const std::function<bool(const Word&)>& member_k, const Nfa& a,
                                 const Alphabet& alphabet) {
    require_same(alphabet, a.alphabet);
    RejectCore core(a);
    const std::size_t bound = static_cast<std::size_t>(a.num_states) + 1;
    WitnessSearch res;
    // A shortest witness never revisits a reject-DFA state, so each step must shrink the set.
    std::vector<std::pair<Word, std::vector<int>>> level;
    charge(res.words_checked, "short-witness search");
    if (member_k(Word{})) level.push_back({Word{}, core.accessible});
    for (std::size_t len = 0; len <= bound && !level.empty(); ++len) {
        std::vector<std::pair<Word, std::vector<int>>> next;
        for (auto& [w, p] : level) {
            if (!any_final(a, p)) {
                res.witness = w;
                return res;
            }
            if (len == bound) continue;
            for (std::size_t x = 0; x < alphabet.size(); ++x) {
                auto np = core.step(p, static_cast<Letter>(x));
                if (np.size() == p.size()) continue;
                Word nw = w;
                nw.push_back(static_cast<Letter>(x));
                charge(res.words_checked, "short-witness search");
                if (!member_k(nw)) continue;
                next.emplace_back(std::move(nw), std::move(np));
            }
        }
        level = std::move(next);
    }
    return res;
}

WitnessSearch find_bounded_witness(const std::function<bool(const Word&)>& member_k,
                                   const std::function<bool(const Word&)>& member_l, const Alphabet& alphabet,
                                   std::size_t bound) {
    WitnessSearch res;
    std::vector<Word> level;
    charge(res.words_checked, "bounded witness search");
    if (member_k(Word{})) level.push_back({});
    for (std::size_t len = 0; len <= bound && !level.empty(); ++len) {
        std::vector<Word> next;
        for (auto& w : level) {
            if (!member_l(w)) {
                res.witness = w;
                return res;
            }
            if (len == bound) continue;
            for (std::size_t x = 0; x < alphabet.size(); ++x) {
                Word nw = w;
                nw.push_back(static_cast<Letter>(x));
                charge(res.words_checked, "bounded witness search");
                if (member_k(nw)) next.push_back(std::move(nw));
            }
        }
        level = std::move(next);
    }
    return res;
}

}  // namespace subword
