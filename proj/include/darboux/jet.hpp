#pragma once

// Truncated Taylor ("jet") arithmetic: a Jet holds the derivatives
// f(x), f'(x), ..., f^{(m)}(x) of a function at one point.  Products follow
// the Leibniz rule, quotients invert it.  This is how first-order operator
// chains are applied with exact derivatives and no finite differencing.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "darboux/errors.hpp"
#include "darboux/exp_sum.hpp"

namespace darboux {

class Jet {
 public:
  using value_type = std::complex<double>;

  Jet() = default;
  explicit Jet(int order) : d_(static_cast<std::size_t>(order) + 1) {}
  explicit Jet(std::vector<value_type> derivs) : d_(std::move(derivs)) {}

  int order() const noexcept { return static_cast<int>(d_.size()) - 1; }

  value_type& operator[](std::size_t i) { return d_[i]; }
  const value_type& operator[](std::size_t i) const { return d_[i]; }

  value_type value() const { return d_.empty() ? value_type{} : d_[0]; }

  /// Jet of f' with one order less.
  Jet derivative() const {
    if (d_.size() < 2) throw contract_error("Jet::derivative: order exhausted");
    return Jet{std::vector<value_type>(d_.begin() + 1, d_.end())};
  }

  /// Truncate to a lower order.
  Jet truncated(int order) const {
    if (order > this->order())
      throw contract_error("Jet::truncated: not enough derivatives");
    return Jet{std::vector<value_type>(d_.begin(), d_.begin() + order + 1)};
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet out(common_order(a, b));
    for (std::size_t i = 0; i < out.d_.size(); ++i) out.d_[i] = a.d_[i] + b.d_[i];
    return out;
  }

  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet out(common_order(a, b));
    for (std::size_t i = 0; i < out.d_.size(); ++i) out.d_[i] = a.d_[i] - b.d_[i];
    return out;
  }

  friend Jet operator*(const Jet& a, value_type c) {
    Jet out = a;
    for (auto& v : out.d_) v *= c;
    return out;
  }

  friend Jet operator*(value_type c, const Jet& a) { return a * c; }

  // (fg)^{(n)} = sum_j C(n,j) f^{(j)} g^{(n-j)}
  friend Jet operator*(const Jet& a, const Jet& b) {
    const int m = common_order(a, b);
    Jet out(m);
    for (int n = 0; n <= m; ++n) {
      value_type s{};
      double binom = 1.0;
      for (int j = 0; j <= n; ++j) {
        s += binom * a.d_[static_cast<std::size_t>(j)] * b.d_[static_cast<std::size_t>(n - j)];
        binom = binom * (n - j) / (j + 1);
      }
      out.d_[static_cast<std::size_t>(n)] = s;
    }
    return out;
  }

  /// q = num / den, solved from num = q * den via the Leibniz rule.
  /// Requires den.value() != 0.
  static Jet divide(const Jet& num, const Jet& den) {
    const int m = common_order(num, den);
    if (den.d_[0] == value_type{})
      throw pole_error("Jet::divide: denominator vanishes", 0.0);
    Jet q(m);
    for (int n = 0; n <= m; ++n) {
      value_type s = num.d_[static_cast<std::size_t>(n)];
      double binom = static_cast<double>(n);
      for (int j = 1; j <= n; ++j) {
        s -= binom * den.d_[static_cast<std::size_t>(j)] * q.d_[static_cast<std::size_t>(n - j)];
        binom = binom * (n - j) / (j + 1);
      }
      q.d_[static_cast<std::size_t>(n)] = s / den.d_[0];
    }
    return q;
  }

 private:
  static int common_order(const Jet& a, const Jet& b) {
    const int m = std::min(a.order(), b.order());
    if (m < 0) throw contract_error("Jet arithmetic on empty jet");
    return m;
  }

  std::vector<value_type> d_;
};

/// Jet of s at x.  Mantissas of the scaled derivative pass are rescaled back;
/// callers forming ratios should pair this with logarithmic_derivative_jet.
inline Jet expsum_jet(const ExpSum& s, double x, int order) {
  std::vector<double> mant(static_cast<std::size_t>(order) + 1);
  double log_scale = 0.0;
  s.eval_derivatives_scaled(x, mant, log_scale);
  const double scale = std::exp(log_scale);
  std::vector<Jet::value_type> d(mant.size());
  for (std::size_t i = 0; i < mant.size(); ++i) d[i] = mant[i] * scale;
  return Jet{std::move(d)};
}

/// Jet of s'/s at x, formed from one scaled pass so the common exponential
/// factor cancels exactly and never overflows.
inline Jet logarithmic_derivative_jet(const ExpSum& s, double x, int order) {
  std::vector<double> mant(static_cast<std::size_t>(order) + 2);
  double log_scale = 0.0;
  s.eval_derivatives_scaled(x, mant, log_scale);
  const double mag = s.magnitude_scaled(x);
  if (mag == 0.0 || std::abs(mant[0]) < 1e-12 * mag)
    throw pole_error("logarithmic derivative: sum vanishes", x);
  std::vector<Jet::value_type> num(mant.begin() + 1, mant.end());
  std::vector<Jet::value_type> den(mant.begin(), mant.end() - 1);
  return Jet::divide(Jet{std::move(num)}, Jet{std::move(den)});
}

}  // namespace darboux
