#pragma once

// Exact arithmetic for finite sums of real exponentials c * e^{lambda x}.
// Sums of this form are closed under addition, multiplication and
// differentiation, which is what makes every derived quantity in this
// library available without numerical differentiation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "darboux/errors.hpp"

namespace darboux {

/// One term c * e^{lambda x}.  A shift mu in c * e^{lambda x + mu} is always
/// folded into the coefficient, so the stored shift is identically zero.
struct ExpTerm {
  double coeff = 0.0;
  double rate = 0.0;
};

/// Value decomposed as mantissa * exp(log_scale).  Lets callers form ratios
/// of sums whose raw values overflow double.
struct ScaledValue {
  double mantissa = 0.0;
  double log_scale = 0.0;

  double value() const { return mantissa * std::exp(log_scale); }
};

/// Finite sum of exponential terms, kept sorted by strictly increasing rate.
/// Terms whose rates agree within a relative 1e-12 are merged; zero
/// coefficients are dropped.  The empty sum is the zero function.
class ExpSum {
 public:
  ExpSum() = default;

  explicit ExpSum(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {
    normalize();
  }

  static ExpSum zero() { return ExpSum{}; }

  static ExpSum constant(double c) {
    return ExpSum{{ExpTerm{c, 0.0}}};
  }

  /// c * e^{rate x + shift}, stored canonically as (c e^{shift}) e^{rate x}.
  static ExpSum single(double coeff, double rate, double shift = 0.0) {
    return ExpSum{{ExpTerm{coeff * std::exp(shift), rate}}};
  }

  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Term-wise derivative; `order` repeated single derivatives so that
  /// derivative(1) twice is bit-identical to derivative(2).
  ExpSum derivative(int order = 1) const {
    if (order < 0) throw invalid_parameter_error("derivative order must be >= 0");
    ExpSum out = *this;
    for (int pass = 0; pass < order; ++pass) {
      std::vector<ExpTerm> next;
      next.reserve(out.terms_.size());
      for (const ExpTerm& t : out.terms_) {
        if (t.rate != 0.0) next.push_back({t.coeff * t.rate, t.rate});
      }
      out.terms_ = std::move(next);
    }
    return out;
  }

  /// Plain evaluation; overflows for large |x| * rate, use eval_scaled then.
  double operator()(double x) const { return eval_scaled(x).value(); }

  /// Evaluation with the dominant exponential factored out:
  /// s(x) = e^{m} * sum_i c_i e^{lambda_i x - m},  m = max_i lambda_i x.
  ScaledValue eval_scaled(double x) const {
    if (terms_.empty()) return {0.0, 0.0};
    double m = terms_.front().rate * x;
    for (const ExpTerm& t : terms_) m = std::max(m, t.rate * x);
    double s = 0.0;
    for (const ExpTerm& t : terms_) s += t.coeff * std::exp(t.rate * x - m);
    return {s, m};
  }

  /// Mantissas of s, s', ..., s^{(orders-1)} at x sharing one log scale.
  /// out[k] * exp(log_scale) reproduces the k-th derivative.
  void eval_derivatives_scaled(double x, std::span<double> out,
                               double& log_scale) const {
    for (double& v : out) v = 0.0;
    if (terms_.empty()) {
      log_scale = 0.0;
      return;
    }
    double m = terms_.front().rate * x;
    for (const ExpTerm& t : terms_) m = std::max(m, t.rate * x);
    log_scale = m;
    for (const ExpTerm& t : terms_) {
      double w = t.coeff * std::exp(t.rate * x - m);
      for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] += w;
        w *= t.rate;
      }
    }
  }

  /// Sum of |c_i e^{lambda_i x - m}|; cancellation yardstick for pole tests.
  double magnitude_scaled(double x) const {
    if (terms_.empty()) return 0.0;
    double m = terms_.front().rate * x;
    for (const ExpTerm& t : terms_) m = std::max(m, t.rate * x);
    double s = 0.0;
    for (const ExpTerm& t : terms_) s += std::abs(t.coeff) * std::exp(t.rate * x - m);
    return s;
  }

  ExpSum& operator+=(const ExpSum& rhs) {
    terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
    normalize();
    return *this;
  }

  ExpSum& operator-=(const ExpSum& rhs) {
    terms_.reserve(terms_.size() + rhs.terms_.size());
    for (const ExpTerm& t : rhs.terms_) terms_.push_back({-t.coeff, t.rate});
    normalize();
    return *this;
  }

  ExpSum& operator*=(double c) {
    if (c == 0.0) {
      terms_.clear();
      return *this;
    }
    for (ExpTerm& t : terms_) t.coeff *= c;
    return *this;
  }

  friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
  friend ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }
  friend ExpSum operator*(ExpSum a, double c) { return a *= c; }
  friend ExpSum operator*(double c, ExpSum a) { return a *= c; }

  /// Product has at most |a| * |b| terms before rate merging.
  friend ExpSum operator*(const ExpSum& a, const ExpSum& b) {
    std::vector<ExpTerm> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const ExpTerm& s : a.terms_)
      for (const ExpTerm& t : b.terms_)
        prod.push_back({s.coeff * t.coeff, s.rate + t.rate});
    return ExpSum{std::move(prod)};
  }

 private:
  // Rates within 1e-12 * max(1, |rate|) of each other collapse to one term;
  // the chain parameters are user-given reals, collisions only arise from
  // arithmetic on them.
  static bool same_rate(double r1, double r2) {
    return std::abs(r1 - r2) < 1e-12 * std::max(1.0, std::abs(r1));
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const ExpTerm& s, const ExpTerm& t) { return s.rate < t.rate; });
    std::vector<ExpTerm> merged;
    merged.reserve(terms_.size());
    for (const ExpTerm& t : terms_) {
      if (!merged.empty() && same_rate(merged.back().rate, t.rate)) {
        merged.back().coeff += t.coeff;
      } else {
        merged.push_back(t);
      }
    }
    std::erase_if(merged, [](const ExpTerm& t) { return t.coeff == 0.0; });
    terms_ = std::move(merged);
  }

  std::vector<ExpTerm> terms_;
};

/// [ln s]''(x) = (s'' s - s'^2) / s^2, evaluated from one scaled derivative
/// pass so the ratio never overflows.  Throws pole_error where s vanishes
/// (relative to the term magnitudes), which signals a singular potential.
inline double log_second_derivative(const ExpSum& s, double x) {
  double d[3];
  double scale = 0.0;
  s.eval_derivatives_scaled(x, d, scale);
  const double mag = s.magnitude_scaled(x);
  if (mag == 0.0 || std::abs(d[0]) < 1e-12 * mag)
    throw pole_error("log_second_derivative: sum vanishes", x);
  return (d[2] * d[0] - d[1] * d[1]) / (d[0] * d[0]);
}

}  // namespace darboux
