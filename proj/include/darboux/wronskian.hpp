#pragma once

// Closed-form Wronskians of the alternating cosh/sinh chain family.
//
// For u_1 = cosh(a_1 x + b_1), u_2 = sinh(a_2 x + b_2), u_3 = cosh(...), ...
// with 0 < a_1 < a_2 < ... the N x N Wronskian is a finite combination of
// hyperbolic cosines,
//
//   W = 2^{1-N} sum_{(eps)} eps_2 eps_4 ... eps_p
//        prod_{j>i} (eps_j a_j - eps_i a_i) cosh[ sum_l eps_l (a_l x + b_l) ],
//
// summed over the 2^{N-1} sign vectors with eps_1 = +1 fixed; p = N for even
// N and N-1 for odd N.  Minors with one function removed break the
// alternation, so they go through a generic determinant over the ExpSum ring.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "darboux/errors.hpp"
#include "darboux/exp_sum.hpp"
#include "darboux/transformation.hpp"

namespace darboux {

/// Sign vector (eps_1, ..., eps_N) over {+1, -1} with eps_1 fixed to +1;
/// (eps) and (-eps) are identified by that convention.
struct SignVector {
  std::vector<std::int8_t> entries;
};

/// All 2^{N-1} distinct sign vectors for length n >= 1.
inline std::vector<SignVector> sign_vectors(int n) {
  if (n < 1) throw invalid_parameter_error("sign_vectors: n must be >= 1");
  std::vector<SignVector> out;
  out.reserve(std::size_t{1} << (n - 1));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    SignVector sv;
    sv.entries.resize(static_cast<std::size_t>(n));
    sv.entries[0] = 1;
    for (int i = 1; i < n; ++i)
      sv.entries[static_cast<std::size_t>(i)] =
          (mask >> (i - 1)) & 1 ? -1 : 1;
    out.push_back(std::move(sv));
  }
  return out;
}

/// Rejects anything outside the admissible family: empty chains, rates not
/// strictly increasing, or a broken cosh/sinh slot pattern.
inline void validate_chain_pattern(std::span<const TransformationFunction> funcs) {
  if (funcs.empty()) throw invalid_chain_error("chain must be nonempty");
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    if (funcs[i].kind() != slot_kind(static_cast<int>(i) + 1))
      throw invalid_chain_error(
          "chain kinds must alternate cosh, sinh, ... starting with cosh");
    if (i > 0 && !(funcs[i - 1].slope() < funcs[i].slope()))
      throw invalid_chain_error("chain rates must be strictly increasing");
  }
}

/// N x N Wronskian of the chain family as an ExpSum (<= 2^N terms).
inline ExpSum wronskian_closed_form(std::span<const TransformationFunction> funcs) {
  validate_chain_pattern(funcs);
  const int n = static_cast<int>(funcs.size());
  const int p = (n % 2 == 0) ? n : n - 1;
  const double prefactor = std::ldexp(1.0, 1 - n);  // 2^{1-N}

  std::vector<ExpTerm> terms;
  terms.reserve(std::size_t{1} << n);
  for (const SignVector& sv : sign_vectors(n)) {
    double sign = 1.0;
    for (int idx = 2; idx <= p; idx += 2) sign *= sv.entries[idx - 1];
    double prod = 1.0;
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i)
        prod *= sv.entries[j] * funcs[j].slope() - sv.entries[i] * funcs[i].slope();
    double rate = 0.0, shift = 0.0;
    for (int l = 0; l < n; ++l) {
      rate += sv.entries[l] * funcs[l].slope();
      shift += sv.entries[l] * funcs[l].offset();
    }
    // cosh[rate x + shift] splits into the +/- exponential pair.
    const double c = prefactor * sign * prod * 0.5;
    terms.push_back({c * std::exp(shift), rate});
    terms.push_back({c * std::exp(-shift), -rate});
  }
  return ExpSum{std::move(terms)};
}

namespace detail {

// Determinant over the ExpSum ring by expansion along rows, memoized on the
// set of still-unused columns.  Row r of the matrix must be supplied by
// entry(r, c); n <= 8 keeps the 2^n state space tiny.
template <typename EntryFn>
class ExpSumDeterminant {
 public:
  ExpSumDeterminant(int n, EntryFn entry) : n_(n), entry_(entry) {
    cache_.resize(std::size_t{1} << n_);
    seen_.assign(std::size_t{1} << n_, false);
  }

  ExpSum compute() { return expand((std::uint32_t{1} << n_) - 1); }

 private:
  ExpSum expand(std::uint32_t cols) {
    if (cols == 0) return ExpSum::constant(1.0);
    if (seen_[cols]) return cache_[cols];
    const int row = n_ - __builtin_popcount(cols);
    ExpSum acc;
    double sign = 1.0;
    for (int c = 0; c < n_; ++c) {
      if (!(cols & (std::uint32_t{1} << c))) continue;
      acc += sign * (entry_(row, c) * expand(cols & ~(std::uint32_t{1} << c)));
      sign = -sign;
    }
    seen_[cols] = true;
    cache_[cols] = acc;
    return acc;
  }

  int n_;
  EntryFn entry_;
  std::vector<ExpSum> cache_;
  std::vector<bool> seen_;
};

}  // namespace detail

/// Determinant of an n x n matrix of ExpSums (row-major).
inline ExpSum expsum_determinant(const std::vector<std::vector<ExpSum>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return ExpSum::constant(1.0);
  auto entry = [&m](int r, int c) -> const ExpSum& { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; };
  return detail::ExpSumDeterminant<decltype(entry)>(n, entry).compute();
}

/// (N-1) x (N-1) Wronskian of the chain with function `omit` (1-based)
/// removed, in the original order.  The omission generally breaks the
/// alternation, hence the generic determinant.
inline ExpSum wronskian_minor(std::span<const TransformationFunction> funcs,
                              int omit) {
  const int n = static_cast<int>(funcs.size());
  if (omit < 1 || omit > n)
    throw index_error("wronskian_minor: omitted index out of range");
  if (n == 1) return ExpSum::constant(1.0);
  std::vector<std::vector<ExpSum>> m(static_cast<std::size_t>(n - 1));
  for (int r = 0; r < n - 1; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c == omit - 1) continue;
      m[static_cast<std::size_t>(r)].push_back(funcs[static_cast<std::size_t>(c)].to_exp_sum().derivative(r));
    }
  }
  return expsum_determinant(m);
}

/// Row-deleted bordered minors R_m, m = 0..N: determinant of the chain's
/// derivative matrix with rows 0..N except m.  These are the cofactors of
/// the last column of the bordered Wronskian, so for any seed psi
///
///   L^{(N)} psi = sum_m (-1)^{N+m} psi^{(m)} R_m / W,    R_N = W.
inline std::vector<ExpSum> bordered_row_minors(
    std::span<const TransformationFunction> funcs) {
  const int n = static_cast<int>(funcs.size());
  std::vector<ExpSum> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  if (n == 0) {
    out.push_back(ExpSum::constant(1.0));
    return out;
  }
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<std::vector<ExpSum>> m;
    m.reserve(static_cast<std::size_t>(n));
    for (int r = 0; r <= n; ++r) {
      if (r == skip) continue;
      std::vector<ExpSum> row;
      row.reserve(static_cast<std::size_t>(n));
      for (int c = 0; c < n; ++c)
        row.push_back(funcs[static_cast<std::size_t>(c)].to_exp_sum().derivative(r));
      m.push_back(std::move(row));
    }
    out.push_back(expsum_determinant(m));
  }
  return out;
}

}  // namespace darboux
