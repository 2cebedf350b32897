#pragma once

#include "subword/alphabet.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace subword {

using IntVec = std::vector<BigInt>;
using IntMatrix = std::vector<IntVec>;  // row-major
using Rational = boost::multiprecision::cpp_rational;

/// Small nonnegative integer vectors (solution counts).
using NatVec = std::vector<std::int64_t>;

IntVec zero_vec(std::size_t k);
IntVec add(const IntVec& a, const IntVec& b);
IntVec neg(const IntVec& a);
BigInt norm_inf(const IntVec& v);

/// Matrix whose columns are the given vectors (all of dimension k).
IntMatrix from_columns(const std::vector<IntVec>& cols, std::size_t k);

std::size_t rank_of(const std::vector<IntVec>& vecs);
std::size_t matrix_rank(const IntMatrix& m);
bool linearly_independent(const std::vector<IntVec>& vecs);
bool in_span(const std::vector<IntVec>& basis, const IntVec& u);

/// Keeps s and appends u when u is independent of it.
std::vector<IntVec> reduce_span(const std::vector<IntVec>& s, const IntVec& u);

/// max over rows of the sum of absolute values.
BigInt norm_1inf(const IntMatrix& m);
BigInt pottier_bound(const BigInt& norm1inf, std::uint64_t r);

/// Componentwise-minimal nonzero x in N^m with Mx = 0 (completion procedure).
std::vector<NatVec> hilbert_basis(const IntMatrix& m, std::size_t cols);

/// Same set, by enumerating every x with |x|_1 <= pottier_bound and keeping the minimal solutions.
std::vector<NatVec> hilbert_basis_bruteforce(const IntMatrix& m, std::size_t cols);

/// Some x in N^cols with Mx = b, or nothing. Exact.
std::optional<NatVec> solve_nonneg(const IntMatrix& m, std::size_t cols, const IntVec& b);

/// Exists x >= 1 (integers) on s, y >= 0 on t with sum x_i s_i + sum y_j t_j = 0.
bool is_cancellable(const std::vector<IntVec>& s, const std::vector<IntVec>& t);

/// Rational feasibility of {A z = b, z >= lower} by a two-phase simplex with Bland's rule.
bool rational_feasible(const IntMatrix& a, std::size_t cols, const IntVec& b, const std::vector<BigInt>& lower);

/// The same cancellability question answered over the rationals (equivalent by scaling).
bool cancellable_rational(const std::vector<IntVec>& s, const std::vector<IntVec>& t);

}  // namespace subword
