#include "subword/trees.hpp"

#include <algorithm>
#include <functional>

namespace subword {

namespace {

int source(const BlindAutomaton& a, std::size_t t) { return a.transitions[t].from; }

std::vector<int> sources(const BlindAutomaton& a, const Walk& w) {
    std::vector<int> p;
    for (auto t : w) p.push_back(source(a, t));
    return p;
}

Walk concat(Walk x, const Walk& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
}

}  // namespace

CycleKind classify_cycle(const BlindAutomaton& a, const Walk& w) {
    if (w.empty() || !is_chained(a, w)) return CycleKind::NotCycle;
    if (a.transitions[w.back()].to != source(a, w.front())) return CycleKind::NotCycle;
    const auto p = sources(a, w);
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i] == p[0]) return CycleKind::Cycle;
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return CycleKind::Prime;
    return CycleKind::Simple;
}

WalkDecomposition decompose_walk(const BlindAutomaton& a, const Walk& w) {
    if (!is_chained(a, w)) throw Error("walk transitions do not chain");
    struct Cut {
        std::size_t pos, begin, end;
    };
    std::vector<int> index(static_cast<std::size_t>(a.num_states), -1);
    std::vector<int> states{walk_start(a, w, a.initial)};
    std::vector<std::size_t> since{0};
    Walk residual;
    std::vector<Cut> cuts;
    index[static_cast<std::size_t>(states[0])] = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const int s = a.transitions[w[j]].to;
        const int i = index[static_cast<std::size_t>(s)];
        if (i < 0) {
            residual.push_back(w[j]);
            index[static_cast<std::size_t>(s)] = static_cast<int>(states.size());
            states.push_back(s);
            since.push_back(j + 1);
            continue;
        }
        const auto pos = static_cast<std::size_t>(i);
        for (std::size_t r = pos + 1; r < states.size(); ++r) index[static_cast<std::size_t>(states[r])] = -1;
        states.resize(pos + 1);
        residual.resize(pos);
        std::erase_if(cuts, [&](const Cut& c) { return c.pos > pos; });
        cuts.push_back({pos, since[pos], j + 1});
        since.resize(pos + 1);
        since[pos] = j + 1;
    }
    WalkDecomposition d{residual, {}};
    std::stable_sort(cuts.begin(), cuts.end(), [](const Cut& x, const Cut& y) { return x.pos < y.pos; });
    for (const auto& c : cuts)
        d.cycles.emplace_back(c.pos, Walk(w.begin() + static_cast<std::ptrdiff_t>(c.begin),
                                          w.begin() + static_cast<std::ptrdiff_t>(c.end)));
    return d;
}

Walk recompose(const WalkDecomposition& d) {
    Walk out;
    std::size_t c = 0;
    for (std::size_t i = 0; i <= d.residual.size(); ++i) {
        while (c < d.cycles.size() && d.cycles[c].first == i) out = concat(std::move(out), d.cycles[c++].second);
        if (i < d.residual.size()) out.push_back(d.residual[i]);
    }
    return out;
}

Walk flatten(const InsertionTree& t) {
    Walk out;
    std::size_t c = 0;
    for (std::size_t i = 0; i < t.gamma.size(); ++i) {
        while (c < t.children.size() && t.children[c].first == i) out = concat(std::move(out), flatten(t.children[c++].second));
        out.push_back(t.gamma[i]);
    }
    return out;
}

InsertionTree build_insertion_tree(const BlindAutomaton& a, const Walk& c) {
    const auto kind = classify_cycle(a, c);
    if (kind != CycleKind::Prime && kind != CycleKind::Simple) throw Error("insertion trees need a prime cycle");
    if (kind == CycleKind::Simple) return InsertionTree{c, {}, false};

    const auto p = sources(a, c);
    // the repeated proper state with the longest cycle factor
    int best = -1;
    std::size_t first = 0, last = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
        std::size_t j = p.size() - 1;
        while (p[j] != p[i]) --j;
        if (j == i) continue;
        bool seen_before = false;
        for (std::size_t h = 1; h < i; ++h) seen_before |= p[h] == p[i];
        if (seen_before) continue;
        if (best < 0 || j - i > last - first || (j - i == last - first && p[i] < best)) {
            best = p[i];
            first = i;
            last = j;
        }
    }
    const Walk x(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(first));
    const Walk y(c.begin() + static_cast<std::ptrdiff_t>(first), c.begin() + static_cast<std::ptrdiff_t>(last));
    const Walk z(c.begin() + static_cast<std::ptrdiff_t>(last), c.end());

    InsertionTree t = build_insertion_tree(a, concat(x, z));
    for (auto& [pos, child] : t.children) child = build_insertion_tree(a, flatten(child));

    std::size_t at = 0;
    for (std::size_t i = 1; i < t.gamma.size(); ++i)
        if (source(a, t.gamma[i]) == best) at = i;
    if (at == 0) throw Error("internal: split state missing from the root cycle");
    auto it = std::find_if(t.children.begin(), t.children.end(), [&](const auto& ch) { return ch.first > at; });
    std::vector<std::pair<std::size_t, TreeVertex>> factors;
    Walk cur;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i > 0 && source(a, y[i]) == best) {
            factors.emplace_back(at, build_insertion_tree(a, cur));
            cur.clear();
        }
        cur.push_back(y[i]);
    }
    factors.emplace_back(at, build_insertion_tree(a, cur));
    t.children.insert(it, factors.begin(), factors.end());
    return t;
}

std::size_t tree_height(const InsertionTree& t) {
    std::size_t h = 0;
    for (const auto& [pos, ch] : t.children) h = std::max(h, 1 + tree_height(ch));
    return h;
}

std::size_t tree_size(const InsertionTree& t) {
    std::size_t s = 1;
    for (const auto& [pos, ch] : t.children) s += tree_size(ch);
    return s;
}

bool tree_valid(const BlindAutomaton& a, const InsertionTree& t) {
    if (classify_cycle(a, t.gamma) != CycleKind::Simple) return false;
    std::size_t prev = 0;
    for (const auto& [pos, ch] : t.children) {
        if (pos < 1 || pos >= t.gamma.size() || pos < prev) return false;
        if (ch.gamma.empty() || source(a, ch.gamma.front()) != source(a, t.gamma[pos])) return false;
        if (!tree_valid(a, ch)) return false;
        prev = pos;
    }
    return true;
}

std::string format_tree(const BlindAutomaton& a, const InsertionTree& t) {
    std::string out;
    std::function<void(const TreeVertex&, std::size_t, std::size_t)> rec = [&](const TreeVertex& v, std::size_t depth,
                                                                              std::size_t pos) {
        out += std::string(2 * depth, ' ');
        if (depth > 0) out += "@" + std::to_string(pos) + " ";
        if (v.fixed) out += "* ";
        out += a.state_name(source(a, v.gamma.front()));
        for (auto i : v.gamma) {
            const auto& tr = a.transitions[i];
            out += " -" + (tr.label == EPS ? std::string("eps") : a.alphabet.symbol(tr.label)) + "-> " + a.state_name(tr.to);
        }
        out += "\n";
        for (const auto& [p, ch] : v.children) rec(ch, depth + 1, p);
    };
    rec(t, 0, 0);
    return out;
}

namespace {

bool has_fixed(const TreeVertex& v) {
    if (v.fixed) return true;
    for (const auto& [pos, ch] : v.children)
        if (has_fixed(ch)) return true;
    return false;
}

std::size_t count_fixed(const TreeVertex& v) {
    std::size_t c = v.fixed;
    for (const auto& [pos, ch] : v.children) c += count_fixed(ch);
    return c;
}

LetterSet tree_letters(const BlindAutomaton& a, const TreeVertex& v) {
    LetterSet s = 0;
    for (auto i : v.gamma)
        if (a.transitions[i].label != EPS) s |= singleton(a.transitions[i].label);
    for (const auto& [pos, ch] : v.children) s |= tree_letters(a, ch);
    return s;
}

void push_star(std::vector<IdealAtom>& out, LetterSet y) {
    if (y != 0) out.push_back(IdealAtom::star_of(y));
}

void push_opt(std::vector<IdealAtom>& out, Letter x) {
    if (x != EPS) out.push_back(IdealAtom::optional(x));
}

// closure of the pumped versions of one tree that contains a fixed vertex
void tree_ideal(const BlindAutomaton& a, const TreeVertex& t, std::vector<IdealAtom>& out) {
    const std::size_t len = t.gamma.size();
    LetterSet own = 0;
    for (auto i : t.gamma)
        if (a.transitions[i].label != EPS) own |= singleton(a.transitions[i].label);
    if (t.fixed) push_opt(out, a.transitions[t.gamma[0]].label);
    for (std::size_t i = 1; i < len; ++i) {
        LetterSet y = t.fixed ? 0 : own;
        std::vector<const TreeVertex*> fixed_subtrees;
        for (const auto& [pos, ch] : t.children) {
            if (pos != i) continue;
            if (has_fixed(ch)) fixed_subtrees.push_back(&ch);
            else y |= tree_letters(a, ch);
        }
        push_star(out, y);
        for (const auto* s : fixed_subtrees) {
            tree_ideal(a, *s, out);
            push_star(out, y);
        }
        if (t.fixed) push_opt(out, a.transitions[t.gamma[i]].label);
    }
}

TreeVertex* locate(PumpSequence& s, const std::vector<std::size_t>& path, std::vector<std::pair<std::size_t, TreeVertex>>** siblings,
                   std::size_t* index) {
    if (path.empty() || path[0] >= s.trees.size()) throw Error("pump step addresses no vertex");
    TreeVertex* v = &s.trees[path[0]];
    *siblings = nullptr;
    *index = path[0];
    for (std::size_t d = 1; d < path.size(); ++d) {
        if (path[d] >= v->children.size()) throw Error("pump step addresses no vertex");
        *siblings = &v->children;
        *index = path[d];
        v = &v->children[path[d]].second;
    }
    return v;
}

}  // namespace

bool compatible(const BlindAutomaton& a, const PumpSequence& s) {
    for (const auto& t : s.trees)
        if (t.gamma.empty() || source(a, t.gamma.front()) != source(a, s.trees.front().gamma.front())) return false;
    return true;
}

std::size_t fixed_count(const PumpSequence& s) {
    std::size_t c = 0;
    for (const auto& t : s.trees) c += count_fixed(t);
    return c;
}

PumpSequence pump(const PumpSequence& s, const std::vector<PumpStep>& script) {
    PumpSequence cur = s;
    for (const auto& step : script) {
        std::vector<std::pair<std::size_t, TreeVertex>>* siblings = nullptr;
        std::size_t index = 0;
        TreeVertex* v = locate(cur, step.path, &siblings, &index);
        TreeVertex copy;
        if (step.kind == PumpStep::Duplicate) {
            if (has_fixed(*v)) throw Error("cannot duplicate a subtree with a fixed vertex");
            copy = *v;
        } else {
            if (v->fixed) throw Error("cannot split a fixed vertex");
            if (step.keep > v->children.size()) throw Error("split index out of range");
            copy.gamma = v->gamma;
            copy.children.assign(v->children.begin() + static_cast<std::ptrdiff_t>(step.keep), v->children.end());
            v->children.resize(step.keep);
        }
        if (siblings) {
            const std::size_t pos = (*siblings)[index].first;
            siblings->insert(siblings->begin() + static_cast<std::ptrdiff_t>(index) + 1, {pos, std::move(copy)});
        } else {
            cur.trees.insert(cur.trees.begin() + static_cast<std::ptrdiff_t>(index) + 1, std::move(copy));
        }
    }
    return cur;
}

Walk flatten(const PumpSequence& s) {
    Walk out;
    for (const auto& t : s.trees) out = concat(std::move(out), flatten(t));
    return out;
}

IdealExpr pump_ideal(const BlindAutomaton& a, const PumpSequence& s) {
    IdealExpr e{a.alphabet, {}};
    LetterSet y = 0;
    for (const auto& t : s.trees)
        if (!has_fixed(t)) y |= tree_letters(a, t);
    if (fixed_count(s) == 0) {
        e.atoms.push_back(IdealAtom::star_of(y));
        return e;
    }
    push_star(e.atoms, y);
    for (const auto& t : s.trees) {
        if (!has_fixed(t)) continue;
        tree_ideal(a, t, e.atoms);
        push_star(e.atoms, y);
    }
    return e;
}

BigInt walk_ideal_bound(std::uint64_t n, std::uint64_t k) {
    return boost::multiprecision::pow(BigInt(5 * n), static_cast<unsigned>(7 * (k + 1) * (k + 1)));
}

WalkIdeal ideal_for_walk_detailed(const BlindAutomaton& a, const Walk& w) {
    if (!is_accepting_walk(a, w)) throw Error("walk is not accepting");
    const auto d = decompose_walk(a, w);
    std::vector<PumpSequence> seqs(d.residual.size() + 1);
    for (const auto& [pos, c] : d.cycles) seqs[pos].trees.push_back(build_insertion_tree(a, c));

    std::vector<TreeVertex*> order;
    std::function<void(TreeVertex&)> pre = [&](TreeVertex& v) {
        order.push_back(&v);
        for (auto& [pos, ch] : v.children) pre(ch);
    };
    for (auto& s : seqs)
        for (auto& t : s.trees) pre(t);

    std::vector<IntVec> effects;
    std::vector<std::size_t> kind;
    NatVec mult;
    for (auto* v : order) {
        auto e = effect(a, v->gamma);
        auto it = std::find(effects.begin(), effects.end(), e);
        kind.push_back(static_cast<std::size_t>(it - effects.begin()));
        if (it == effects.end()) {
            effects.push_back(e);
            mult.push_back(0);
        }
        ++mult[kind.back()];
    }

    // y with A y = -e and 0 <= y <= x, written with slack z: y + z = x
    const std::size_t m = effects.size(), k = static_cast<std::size_t>(a.k);
    const IntVec e = effect(a, d.residual);
    NatVec y(m, 0);
    auto balanced = [&](const NatVec& cand) {
        for (std::size_t i = 0; i < k; ++i) {
            BigInt sum = e[i];
            for (std::size_t j = 0; j < m; ++j) sum += effects[j][i] * cand[j];
            if (sum != 0) return false;
        }
        return true;
    };
    // fewest fixed cycles first, within a small budget
    std::uint64_t budget = 200000;
    bool found = false;
    std::int64_t total_mult = 0;
    for (auto x : mult) total_mult += x;
    std::function<bool(std::size_t, std::int64_t)> fill = [&](std::size_t j, std::int64_t rest) {
        if (budget == 0) return false;
        --budget;
        if (j == m) return rest == 0 && balanced(y);
        for (std::int64_t v = 0; v <= std::min(rest, mult[j]); ++v) {
            y[j] = v;
            if (fill(j + 1, rest - v)) return true;
        }
        y[j] = 0;
        return false;
    };
    for (std::int64_t total = 0; total <= total_mult && !found && budget > 0; ++total) found = fill(0, total);
    if (!found && m > 0) {
        IntMatrix mat(k + m, IntVec(2 * m, 0));
        IntVec rhs(k + m, 0);
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t i = 0; i < k; ++i) mat[i][j] = effects[j][i];
            mat[k + j][j] = 1;
            mat[k + j][m + j] = 1;
            rhs[k + j] = mult[j];
        }
        for (std::size_t i = 0; i < k; ++i) rhs[i] = -e[i];
        auto sol = solve_nonneg(mat, 2 * m, rhs);
        if (!sol) throw Error("internal: no balancing cycle selection for an accepting walk");
        y.assign(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(m));
    }

    WalkIdeal out;
    NatVec left = y;
    for (std::size_t i = 0; i < order.size(); ++i)
        if (left[kind[i]] > 0) {
            --left[kind[i]];
            order[i]->fixed = true;
            ++out.fixed;
        }

    out.expr = IdealExpr{a.alphabet, {}};
    for (std::size_t pos = 0; pos <= d.residual.size(); ++pos) {
        if (!seqs[pos].trees.empty()) {
            auto part = pump_ideal(a, seqs[pos]);
            out.expr.atoms.insert(out.expr.atoms.end(), part.atoms.begin(), part.atoms.end());
            for (const auto& t : seqs[pos].trees) out.height = std::max(out.height, tree_height(t));
        }
        if (pos < d.residual.size()) push_opt(out.expr.atoms, a.transitions[d.residual[pos]].label);
    }
    out.ideal = normalize(out.expr);
    return out;
}

Ideal ideal_for_walk(const BlindAutomaton& a, const Walk& w) { return ideal_for_walk_detailed(a, w).ideal; }

}  // namespace subword
