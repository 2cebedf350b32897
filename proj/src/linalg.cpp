#include "subword/linalg.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace subword {

IntVec zero_vec(std::size_t k) { return IntVec(k, BigInt(0)); }

IntVec add(const IntVec& a, const IntVec& b) {
    IntVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

IntVec neg(const IntVec& a) {
    IntVec r(a);
    for (auto& x : r) x = -x;
    return r;
}

BigInt norm_inf(const IntVec& v) {
    BigInt m = 0;
    for (const auto& x : v) m = std::max(m, BigInt(abs(x)));
    return m;
}

IntMatrix from_columns(const std::vector<IntVec>& cols, std::size_t k) {
    IntMatrix m(k, IntVec(cols.size(), BigInt(0)));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != k) throw Error("vector dimension mismatch");
        for (std::size_t i = 0; i < k; ++i) m[i][j] = cols[j][i];
    }
    return m;
}

std::size_t matrix_rank(const IntMatrix& input) {
    IntMatrix m = input;
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = rank + 1; r < m.size(); ++r) {
            if (m[r][c] == 0) continue;
            BigInt f = m[r][c], p = m[rank][c];
            BigInt g = 0;
            for (std::size_t j = c; j < cols; ++j) {
                m[r][j] = m[r][j] * p - m[rank][j] * f;
                g = gcd(g, BigInt(abs(m[r][j])));
            }
            if (g > 1)
                for (std::size_t j = c; j < cols; ++j) m[r][j] /= g;
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_of(const std::vector<IntVec>& vecs) {
    if (vecs.empty()) return 0;
    for (const auto& v : vecs)
        if (v.size() != vecs[0].size()) throw Error("vector dimension mismatch");
    return matrix_rank(vecs);
}

bool linearly_independent(const std::vector<IntVec>& vecs) { return rank_of(vecs) == vecs.size(); }

bool in_span(const std::vector<IntVec>& basis, const IntVec& u) {
    std::vector<IntVec> all(basis);
    all.push_back(u);
    return rank_of(all) == rank_of(basis);
}

std::vector<IntVec> reduce_span(const std::vector<IntVec>& s, const IntVec& u) {
    std::vector<IntVec> r(s);
    if (!in_span(s, u)) r.push_back(u);
    return r;
}

BigInt norm_1inf(const IntMatrix& m) {
    BigInt best = 0;
    for (const auto& row : m) {
        BigInt sum = 0;
        for (const auto& x : row) sum += abs(x);
        best = std::max(best, sum);
    }
    return best;
}

BigInt pottier_bound(const BigInt& norm1inf, std::uint64_t r) {
    BigInt p = 1;
    for (std::uint64_t i = 0; i < r; ++i) p *= (1 + norm1inf);
    return p;
}

namespace {

using Col = std::vector<std::int64_t>;

std::vector<Col> small_columns(const IntMatrix& m, std::size_t cols) {
    const std::size_t k = m.size();
    std::vector<Col> out(cols, Col(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        if (m[i].size() != cols) throw Error("matrix row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) {
            if (abs(m[i][j]) > (BigInt(1) << 30)) throw ResourceError("matrix entry too large for completion");
            out[j][i] = static_cast<std::int64_t>(m[i][j]);
        }
    }
    return out;
}

bool leq(const NatVec& a, const NatVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

struct Completion {
    std::vector<NatVec> basis;    // homogeneous minimal solutions (capped coordinate = 0)
    std::optional<NatVec> found;  // first solution with capped coordinate = 1
};

// Contejean-Devie completion. With `capped` set, that coordinate never exceeds 1
// and the search stops at the first solution using it.
Completion complete(const std::vector<Col>& cols, std::size_t k, std::optional<std::size_t> capped) {
    const std::size_t c = cols.size();
    Completion out;
    struct Node {
        NatVec x;
        Col sum;
    };
    std::vector<Node> frontier;
    for (std::size_t j = 0; j < c; ++j) {
        NatVec x(c, 0);
        x[j] = 1;
        frontier.push_back({x, cols[j]});
    }
    std::uint64_t work = 0;
    const std::int64_t limit = std::int64_t{1} << 40;
    while (!frontier.empty()) {
        std::vector<Node> rest;
        for (auto& nd : frontier) {
            bool zero = std::all_of(nd.sum.begin(), nd.sum.end(), [](std::int64_t v) { return v == 0; });
            if (!zero) {
                rest.push_back(std::move(nd));
                continue;
            }
            if (capped && nd.x[*capped] == 1) {
                out.found = nd.x;
                return out;
            }
            out.basis.push_back(nd.x);
        }
        std::set<NatVec> seen;
        std::vector<Node> next;
        for (const auto& nd : rest) {
            for (std::size_t j = 0; j < c; ++j) {
                if (capped && j == *capped && nd.x[j] >= 1) continue;
                std::int64_t dot = 0;
                for (std::size_t i = 0; i < k; ++i) dot += nd.sum[i] * cols[j][i];
                if (dot >= 0) continue;
                NatVec y = nd.x;
                ++y[j];
                if (seen.count(y)) continue;
                bool dominated = false;
                for (const auto& b : out.basis)
                    if (leq(b, y)) { dominated = true; break; }
                if (dominated) continue;
                Col s = nd.sum;
                for (std::size_t i = 0; i < k; ++i) {
                    s[i] += cols[j][i];
                    if (s[i] > limit || s[i] < -limit) throw ResourceError("completion values overflow");
                }
                seen.insert(y);
                next.push_back({std::move(y), std::move(s)});
                if (++work > resource_cap()) throw ResourceError("resource cap exceeded in Hilbert basis completion");
            }
        }
        frontier.swap(next);
    }
    return out;
}

// unique solution of M x = b when the columns are independent (rows may exceed columns)
std::optional<std::vector<Rational>> solve_independent(const IntMatrix& m, std::size_t cols, const IntVec& b) {
    const std::size_t k = m.size();
    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(cols + 1));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = Rational(m[i][j]);
        a[i][cols] = Rational(b[i]);
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivot_row(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t p = row;
        while (p < k && a[p][c] == 0) ++p;
        if (p == k) return std::nullopt;  // dependent columns, caller falls back
        std::swap(a[p], a[row]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == row || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[row][c];
            for (std::size_t j = c; j <= cols; ++j) a[r][j] -= f * a[row][j];
        }
        pivot_row[c] = row++;
    }
    std::vector<Rational> x(cols);
    for (std::size_t r = row; r < k; ++r)
        if (a[r][cols] != 0) return std::vector<Rational>{};  // inconsistent: empty marker
    for (std::size_t c = 0; c < cols; ++c) x[c] = a[pivot_row[c]][cols] / a[pivot_row[c]][c];
    return x;
}

}  // namespace

std::vector<NatVec> hilbert_basis(const IntMatrix& m, std::size_t cols) {
    auto sc = small_columns(m, cols);
    auto res = complete(sc, m.size(), std::nullopt);
    std::sort(res.basis.begin(), res.basis.end());
    return res.basis;
}

std::vector<NatVec> hilbert_basis_bruteforce(const IntMatrix& m, std::size_t cols) {
    const BigInt radius_big = pottier_bound(norm_1inf(m), matrix_rank(m));
    if (radius_big > 1000000) throw ResourceError("Pottier radius too large for enumeration");
    const auto radius = static_cast<std::int64_t>(radius_big);
    const auto sc = small_columns(m, cols);
    const std::size_t k = m.size();
    std::vector<NatVec> sols;
    std::uint64_t work = 0;
    NatVec x(cols, 0);
    // all vectors of exact 1-norm `total`, then filter by minimality against smaller norms
    for (std::int64_t total = 1; total <= radius && cols > 0; ++total) {
        std::vector<NatVec> level;
        std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t j, std::int64_t left) {
            if (j + 1 == cols) {
                x[j] = left;
                if (++work > resource_cap()) throw ResourceError("resource cap exceeded in Hilbert enumeration");
                for (std::size_t i = 0; i < k; ++i) {
                    std::int64_t s = 0;
                    for (std::size_t c = 0; c < cols; ++c) s += sc[c][i] * x[c];
                    if (s != 0) return;
                }
                for (const auto& b : sols)
                    if (leq(b, x)) return;
                level.push_back(x);
                return;
            }
            for (std::int64_t v = 0; v <= left; ++v) {
                x[j] = v;
                rec(j + 1, left - v);
            }
        };
        rec(0, total);
        sols.insert(sols.end(), level.begin(), level.end());
    }
    std::sort(sols.begin(), sols.end());
    return sols;
}

std::optional<NatVec> solve_nonneg(const IntMatrix& m, std::size_t cols, const IntVec& b) {
    const std::size_t k = m.size();
    if (b.size() != k) throw Error("right-hand side dimension mismatch");
    if (std::all_of(b.begin(), b.end(), [](const BigInt& v) { return v == 0; })) return NatVec(cols, 0);
    if (cols == 0) return std::nullopt;

    if (auto x = solve_independent(m, cols, b)) {
        if (x->empty()) return std::nullopt;
        NatVec out(cols);
        for (std::size_t j = 0; j < cols; ++j) {
            const Rational& v = (*x)[j];
            if (denominator(v) != 1 || v < 0) return std::nullopt;
            out[j] = static_cast<std::int64_t>(numerator(v));
        }
        return out;
    }

    auto sc = small_columns(m, cols);
    Col nb(k);
    for (std::size_t i = 0; i < k; ++i) nb[i] = -static_cast<std::int64_t>(b[i]);
    sc.push_back(nb);
    auto res = complete(sc, k, cols);
    if (!res.found) return std::nullopt;
    res.found->pop_back();
    return res.found;
}

bool is_cancellable(const std::vector<IntVec>& s, const std::vector<IntVec>& t) {
    if (s.empty()) return true;
    const std::size_t k = s[0].size();
    std::vector<IntVec> cols(s);
    cols.insert(cols.end(), t.begin(), t.end());
    IntMatrix m = from_columns(cols, k);
    auto basis = hilbert_basis(m, cols.size());
    // a witness is a sum of minimal solutions, one covering each vector of s
    for (std::size_t i = 0; i < s.size(); ++i) {
        bool covered = std::any_of(basis.begin(), basis.end(), [&](const NatVec& h) { return h[i] > 0; });
        if (!covered) return false;
    }
    return true;
}

bool rational_feasible(const IntMatrix& a, std::size_t n, const IntVec& b, const std::vector<BigInt>& lower) {
    const std::size_t m = a.size();
    if (b.size() != m || lower.size() != n) throw Error("dimension mismatch in feasibility check");
    // shift z = lower + z', then phase one with one artificial per row
    const std::size_t width = n + m + 1;
    std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(width));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        BigInt rhs = b[i];
        for (std::size_t j = 0; j < n; ++j) rhs -= a[i][j] * lower[j];
        const int sign = rhs < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) tab[i][j] = Rational(a[i][j] * sign);
        tab[i][n + i] = 1;
        tab[i][width - 1] = Rational(rhs * sign);
        basis[i] = n + i;
    }
    std::vector<Rational> obj(width);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) obj[j] -= tab[i][j];
        obj[width - 1] -= tab[i][width - 1];
    }
    while (true) {
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (obj[j] < 0) { enter = j; break; }
        if (enter == width) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0) continue;
            Rational ratio = tab[i][width - 1] / tab[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break;  // unbounded direction cannot occur in phase one
        Rational p = tab[leave][enter];
        for (auto& v : tab[leave]) v /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter] == 0) continue;
            Rational f = tab[i][enter];
            for (std::size_t j = 0; j < width; ++j) tab[i][j] -= f * tab[leave][j];
        }
        Rational f = obj[enter];
        for (std::size_t j = 0; j < width; ++j) obj[j] -= f * tab[leave][j];
        basis[leave] = enter;
    }
    return obj[width - 1] == 0;
}

bool cancellable_rational(const std::vector<IntVec>& s, const std::vector<IntVec>& t) {
    if (s.empty()) return true;
    const std::size_t k = s[0].size();
    std::vector<IntVec> cols(s);
    cols.insert(cols.end(), t.begin(), t.end());
    std::vector<BigInt> lower(cols.size(), BigInt(0));
    for (std::size_t i = 0; i < s.size(); ++i) lower[i] = 1;
    return rational_feasible(from_columns(cols, k), cols.size(), zero_vec(k), lower);
}

}  // namespace subword
