#pragma once

// Chains of first-order transformations over the zero base potential and the
// transformed potentials V_k = -2 [ln W(u_1,...,u_k)]''.

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "darboux/errors.hpp"
#include "darboux/exp_sum.hpp"
#include "darboux/transformation.hpp"
#include "darboux/wronskian.hpp"

namespace darboux {

/// Sampling used to reject chains whose intermediate potentials have poles:
/// every prefix Wronskian is sampled on [0, span_over_a1 / a_1] and a sign
/// change (or zero hit) raises singular_chain_error.
struct PoleScanSettings {
  int samples = 2000;
  double span_over_a1 = 40.0;
};

/// Ordered chain of transformation functions over V_0 = 0.  Prefix
/// Wronskians are built once (closed form) and checked for zeros.
class DarbouxChain {
 public:
  DarbouxChain() { prefix_wronskians_.push_back(ExpSum::constant(1.0)); }

  explicit DarbouxChain(std::vector<TransformationFunction> funcs,
                        const PoleScanSettings& scan = {})
      : funcs_(std::move(funcs)) {
    prefix_wronskians_.reserve(funcs_.size() + 1);
    prefix_wronskians_.push_back(ExpSum::constant(1.0));
    if (funcs_.empty()) return;
    validate_chain_pattern(funcs_);
    for (std::size_t k = 1; k <= funcs_.size(); ++k)
      prefix_wronskians_.push_back(
          wronskian_closed_form(std::span(funcs_).first(k)));
    scan_for_poles(scan);
  }

  /// Chain with the mandated kind pattern: cosh, sinh, cosh, ... and all
  /// shifts defaulting to zero.
  static DarbouxChain from_rates(std::span<const double> rates,
                                 std::span<const double> shifts = {},
                                 const PoleScanSettings& scan = {}) {
    if (!shifts.empty() && shifts.size() != rates.size())
      throw invalid_parameter_error("from_rates: shifts size mismatch");
    std::vector<TransformationFunction> funcs;
    funcs.reserve(rates.size());
    for (std::size_t i = 0; i < rates.size(); ++i)
      funcs.emplace_back(slot_kind(static_cast<int>(i) + 1), rates[i],
                         shifts.empty() ? 0.0 : shifts[i]);
    return DarbouxChain{std::move(funcs), scan};
  }

  std::size_t order() const noexcept { return funcs_.size(); }
  bool empty() const noexcept { return funcs_.empty(); }

  std::span<const TransformationFunction> functions() const noexcept {
    return funcs_;
  }

  const TransformationFunction& function(std::size_t i_1based) const {
    if (i_1based < 1 || i_1based > funcs_.size())
      throw index_error("chain function index out of range");
    return funcs_[i_1based - 1];
  }

  /// W(u_1,...,u_k); k = 0 gives the constant 1.
  const ExpSum& prefix_wronskian(std::size_t k) const {
    if (k >= prefix_wronskians_.size())
      throw index_error("prefix index out of range");
    return prefix_wronskians_[k];
  }

  const ExpSum& full_wronskian() const { return prefix_wronskians_.back(); }

  DarbouxChain prefix(std::size_t k) const {
    if (k > funcs_.size()) throw index_error("prefix longer than chain");
    return DarbouxChain{std::vector<TransformationFunction>(
        funcs_.begin(), funcs_.begin() + static_cast<std::ptrdiff_t>(k))};
  }

  /// prod_i (E - C_i) with C_i = -a_i^2.
  std::complex<double> factorization_polynomial(std::complex<double> energy) const {
    std::complex<double> p{1.0, 0.0};
    for (const auto& u : funcs_) p *= energy - u.eigenvalue();
    return p;
  }

 private:
  void scan_for_poles(const PoleScanSettings& scan) const {
    const double span = scan.span_over_a1 / funcs_.front().slope();
    for (std::size_t k = 1; k <= funcs_.size(); ++k) {
      const ExpSum& w = prefix_wronskians_[k];
      double prev = 0.0;
      for (int j = 0; j <= scan.samples; ++j) {
        const double x = span * j / scan.samples;
        const double v = w.eval_scaled(x).mantissa;
        if (v == 0.0 || (j > 0 && prev * v < 0.0))
          throw singular_chain_error("prefix Wronskian changes sign", x);
        prev = v;
      }
    }
  }

  std::vector<TransformationFunction> funcs_;
  std::vector<ExpSum> prefix_wronskians_;
};

/// V_k(x) = -2 [ln W(u_1,...,u_k)]'' for the whole chain passed in; pass a
/// prefix() to get an intermediate potential.  Empty chain gives 0.
inline double transformed_potential(const DarbouxChain& chain, double x) {
  if (chain.empty()) return 0.0;
  return -2.0 * log_second_derivative(chain.full_wronskian(), x);
}

}  // namespace darboux
