#include "subword/gen.hpp"

#include <random>

namespace subword {

void SubsetSumInstance::validate() const {
    if (u.size() != v.size()) throw Error("u and v must have the same length");
    if (k == 0 || k > 20) throw Error("bit width must be in [1,20]");
    const std::uint64_t limit = std::uint64_t{1} << k;
    for (auto x : u)
        if (x >= limit) throw Error("entry of u does not fit in k bits");
    for (auto x : v)
        if (x >= limit) throw Error("entry of v does not fit in k bits");
    if (t >= limit) throw Error("t does not fit in k bits");
}

SubsetSumGadget gen_subset_sum(const SubsetSumInstance& inst) {
    inst.validate();
    const std::size_t n = inst.u.size();
    const int k = static_cast<int>(inst.k);
    const Alphabet bits({"0", "1"});

    Nfa b(bits, static_cast<int>(n) + 1);
    for (std::size_t i = 0; i < n; ++i) {
        b.add(static_cast<int>(i), 0, static_cast<int>(i) + 1);
        b.add(static_cast<int>(i), 1, static_cast<int>(i) + 1);
    }
    b.set_final(static_cast<int>(n));

    BlindAutomaton a(bits, 3 * k, 1);
    auto unit = [&](std::initializer_list<std::pair<int, int>> entries) {
        std::vector<int> d(static_cast<std::size_t>(3 * k), 0);
        for (auto [c, x] : entries) d[static_cast<std::size_t>(c)] = x;
        return d;
    };
    // adds the set bits of `value` to group g, reading `label` on the first move
    auto add_value = [&](int from, Letter label, int group, std::uint64_t value) {
        int q = from;
        bool first = true;
        for (int bit = 0; bit < k; ++bit) {
            if (!((value >> bit) & 1U)) continue;
            int r = a.add_state();
            a.add(q, first ? label : EPS, unit({{group * k + k - 1 - bit, 1}}), r);
            first = false;
            q = r;
        }
        if (first) {
            int r = a.add_state();
            a.add(q, label, unit({}), r);
            q = r;
        }
        return q;
    };

    // read x, adding u_i for every 1
    int q = a.initial;
    for (std::size_t i = 0; i < n; ++i) {
        int zero = a.add_state();
        a.add(q, 0, unit({}), zero);
        int one = add_value(q, 1, 0, inst.u[i]);
        a.add(one, EPS, unit({}), zero);
        q = zero;
    }
    // guess y
    for (std::size_t i = 0; i < n; ++i) {
        int skip = a.add_state();
        a.add(q, EPS, unit({}), skip);
        int take = add_value(q, EPS, 1, inst.v[i]);
        a.add(take, EPS, unit({}), skip);
        q = skip;
    }
    q = add_value(q, EPS, 2, inst.t);
    // counter g*k+j holds units worth 2^(k-1-j); doubling moves them into counter g*k+k-1
    for (int g = 0; g < 3; ++g)
        for (int bit = 0; bit + 1 < k; ++bit) {
            int half = a.add_state();
            a.add(q, EPS, unit({{g * k + bit, -1}, {g * k + bit + 1, 1}}), half);
            a.add(half, EPS, unit({{g * k + bit + 1, 1}}), q);
            int next = a.add_state();
            a.add(q, EPS, unit({}), next);
            q = next;
        }
    a.add(q, EPS, unit({{3 * k - 1, -1}, {k - 1, -1}}), q);
    a.add(q, EPS, unit({{3 * k - 1, -1}, {2 * k - 1, -1}}), q);
    a.set_final(q);
    return {b, a};
}

bool subset_sum_oracle(const SubsetSumInstance& inst) {
    inst.validate();
    const std::size_t n = inst.u.size();
    if (n > 12) throw ResourceError("subset sum oracle is limited to n <= 12");
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        std::uint64_t ux = 0;
        for (std::size_t i = 0; i < n; ++i)
            if ((x >> i) & 1U) ux += inst.u[i];
        bool found = false;
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << n) && !found; ++y) {
            std::uint64_t vy = 0;
            for (std::size_t i = 0; i < n; ++i)
                if ((y >> i) & 1U) vy += inst.v[i];
            found = ux + vy == inst.t;
        }
        if (!found) return false;
    }
    return true;
}

SubsetSumInstance random_subset_sum(std::uint64_t seed, std::size_t n, unsigned k) {
    std::mt19937_64 g(seed);
    SubsetSumInstance s;
    s.k = k;
    const std::uint64_t limit = std::uint64_t{1} << k;
    for (std::size_t i = 0; i < n; ++i) {
        s.u.push_back(g() % limit);
        s.v.push_back(g() % limit);
    }
    s.t = g() % limit;
    s.validate();
    return s;
}

Cfg gen_pow2_cfg(std::size_t n) {
    Cfg g;
    g.terminals = Alphabet({"a"});
    for (std::size_t i = 0; i <= n; ++i) g.add_nonterminal("A" + std::to_string(i));
    g.start = static_cast<int>(n);
    g.productions.push_back({0, {{true, 0}}});
    for (std::size_t i = 1; i <= n; ++i) {
        const int prev = static_cast<int>(i) - 1;
        g.productions.push_back({static_cast<int>(i), {{false, prev}, {false, prev}}});
    }
    return g;
}

BlindAutomaton gen_pow2_blind(std::size_t n) {
    const int k = static_cast<int>(n) + 1;
    BlindAutomaton a(Alphabet({"a"}), k, 1);
    auto unit = [&](std::initializer_list<std::pair<int, int>> entries) {
        std::vector<int> d(static_cast<std::size_t>(k), 0);
        for (auto [c, x] : entries) d[static_cast<std::size_t>(c)] = x;
        return d;
    };
    int q = a.add_state();
    a.add(a.initial, EPS, unit({{0, 1}}), q);
    for (int i = 0; i + 1 < k; ++i) {
        int half = a.add_state();
        a.add(q, EPS, unit({{i, -1}, {i + 1, 1}}), half);
        a.add(half, EPS, unit({{i + 1, 1}}), q);
        int next = a.add_state();
        a.add(q, EPS, unit({}), next);
        q = next;
    }
    a.add(q, 0, unit({{k - 1, -1}}), q);
    a.set_final(q);
    return a;
}

namespace {

Alphabet letters(std::size_t n) {
    if (n == 0 || n > 26) throw Error("random alphabet size must be in [1,26]");
    std::vector<std::string> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(std::string(1, static_cast<char>('a' + i)));
    return Alphabet(s);
}

}  // namespace

ModelRef gen_random(ModelKind kind, std::uint64_t seed, const RandomParams& p) {
    std::mt19937_64 g(seed);
    const Alphabet x = letters(p.alphabet);
    const std::size_t sigma = x.size();
    auto pick = [&](std::size_t n) { return static_cast<int>(g() % n); };
    // letters, with an empty move one time in sigma+2
    auto label = [&]() {
        auto r = g() % (sigma + 2);
        return r < sigma ? static_cast<Letter>(r) : (r == sigma ? EPS : static_cast<Letter>(g() % sigma));
    };
    if (p.states == 0) throw Error("random models need at least one state");
    const std::size_t m = p.transitions ? p.transitions : 2 * p.states;

    switch (kind) {
    case ModelKind::Nfa: {
        Nfa a(x, static_cast<int>(p.states));
        for (std::size_t i = 0; i < m; ++i) {
            int from = pick(p.states);
            Letter l = label();
            a.add(from, l, pick(p.states));
        }
        a.set_final(pick(p.states));
        for (std::size_t q = 0; q < p.states; ++q)
            if (g() % 4 == 0) a.set_final(static_cast<int>(q));
        return NfaModel{a};
    }
    case ModelKind::Blind: {
        BlindAutomaton a(x, static_cast<int>(p.counters), static_cast<int>(p.states));
        for (std::size_t i = 0; i < m; ++i) {
            int from = pick(p.states);
            Letter l = label();
            std::vector<int> d;
            for (std::size_t j = 0; j < p.counters; ++j) d.push_back(pick(3) - 1);
            a.add(from, l, d, pick(p.states));
        }
        a.set_final(pick(p.states));
        return BlindModel{a};
    }
    case ModelKind::Ideal: {
        const auto full = (LetterSet{1} << sigma) - 1;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            IdealExpr e{x, {}};
            for (std::size_t i = 0; i <= p.ideal_length; ++i) {
                auto set = static_cast<LetterSet>(g() % (full + 1));
                if (g() % 3 == 0) set = 0;
                e.atoms.push_back(IdealAtom::star_of(set));
                if (i < p.ideal_length) e.atoms.push_back(IdealAtom::optional(pick(sigma)));
            }
            Ideal id = normalize(e);
            if (id.length() == p.ideal_length) return IdealModel{id};
        }
        const auto all = candidate_ideals(x, p.ideal_length);
        if (all.empty()) throw Error("no ideal of the requested length");
        return IdealModel{all[g() % all.size()]};
    }
    case ModelKind::Cfg: {
        Cfg c;
        c.terminals = x;
        const std::size_t nn = std::max<std::size_t>(p.nonterminals, 1);
        for (std::size_t i = 0; i < nn; ++i) c.add_nonterminal("N" + std::to_string(i));
        for (std::size_t i = 0; i < p.productions; ++i) {
            Production pr{pick(nn), {}};
            const std::size_t len = g() % 4;
            for (std::size_t j = 0; j < len; ++j) {
                if (g() % 2) pr.body.push_back({true, pick(sigma)});
                else pr.body.push_back({false, pick(nn)});
            }
            c.productions.push_back(pr);
        }
        // keeps the language nonempty
        Production base{0, {}};
        for (std::size_t j = g() % 3; j > 0; --j) base.body.push_back({true, pick(sigma)});
        c.productions.push_back(base);
        return CfgModel{to_cnf(c)};
    }
    }
    throw Error("unknown model kind");
}

}  // namespace subword
