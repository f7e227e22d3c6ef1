#pragma once

// Transformation functions of the solvable chain family: hyperbolic
// solutions u(x) = cosh(a x + b) or sinh(a x + b) of the free equation
// -u'' = -a^2 u.  Odd chain slots carry cosh, even slots sinh.

#include <cmath>

#include "darboux/errors.hpp"
#include "darboux/exp_sum.hpp"

namespace darboux {

enum class HyperbolicKind { cosh, sinh };

/// Encode cosh/sinh(a x + b) as the two-term exponential sum
/// (e^{b}/2) e^{a x} +/- (e^{-b}/2) e^{-a x}.
inline ExpSum exp_sum_from_hyperbolic(HyperbolicKind kind, double a, double b) {
  if (!(a > 0.0))
    throw invalid_parameter_error("hyperbolic slope must be positive");
  if (!(std::abs(b) < 700.0))
    throw invalid_parameter_error("hyperbolic shift too large to fold");
  const double sign = (kind == HyperbolicKind::cosh) ? 1.0 : -1.0;
  return ExpSum{{ExpTerm{sign * 0.5 * std::exp(-b), -a},
                 ExpTerm{0.5 * std::exp(b), a}}};
}

/// One chain element u_i.  Its eigenvalue C = -a^2 becomes a factorization
/// constant of the composed operator.
class TransformationFunction {
 public:
  TransformationFunction(HyperbolicKind kind, double slope, double offset)
      : kind_(kind), slope_(slope), offset_(offset) {
    if (!(slope > 0.0))
      throw invalid_parameter_error("transformation slope must be positive");
  }

  HyperbolicKind kind() const noexcept { return kind_; }
  double slope() const noexcept { return slope_; }
  double offset() const noexcept { return offset_; }
  double eigenvalue() const noexcept { return -slope_ * slope_; }

  double value(double x) const { return derivative(0, x); }

  /// m-th derivative a^m cosh/sinh(a x + b), evaluated directly through the
  /// standard library.  This deliberately bypasses ExpSum so that the
  /// numerical Wronskian oracle stays independent of the closed forms.
  double derivative(int order, double x) const {
    const double t = slope_ * x + offset_;
    double f;
    if (kind_ == HyperbolicKind::cosh)
      f = (order % 2 == 0) ? std::cosh(t) : std::sinh(t);
    else
      f = (order % 2 == 0) ? std::sinh(t) : std::cosh(t);
    return std::pow(slope_, order) * f;
  }

  ExpSum to_exp_sum() const {
    return exp_sum_from_hyperbolic(kind_, slope_, offset_);
  }

 private:
  HyperbolicKind kind_;
  double slope_;
  double offset_;
};

inline TransformationFunction cosh_function(double a, double b = 0.0) {
  return {HyperbolicKind::cosh, a, b};
}

inline TransformationFunction sinh_function(double a, double b = 0.0) {
  return {HyperbolicKind::sinh, a, b};
}

/// Kind mandated by the (1-based) chain slot: cosh on odd, sinh on even.
inline HyperbolicKind slot_kind(int slot_1based) {
  return (slot_1based % 2 == 1) ? HyperbolicKind::cosh : HyperbolicKind::sinh;
}

}  // namespace darboux
