#pragma once

// The semiaxis spectral data of a transformed potential: bound levels with
// normalized eigenfunctions, Jost solutions, the rational Jost function, and
// scattering phase shifts.
//
// Bound states are selected by the boundary criterion: level i is kept iff
// the transformed second solution vt_i = W^{(i)}/W vanishes at the origin
// for the zero-shift reference chain.  With increasing rates this selects
// the odd chain indices for even N and the even ones for odd N, giving
// floor(N/2) levels at energies -a_i^2; the choice reproduces the N = 2
// closed forms and the independent finite-difference spectra.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "darboux/analytic_solution.hpp"
#include "darboux/chain.hpp"
#include "darboux/errors.hpp"
#include "darboux/exp_sum.hpp"
#include "darboux/wronskian.hpp"

namespace darboux {

/// Jost function as a rational object: zeros at k = i * zero_rate (plus an
/// optional simple zero at the origin for odd chains), denominator factors
/// (k + i * pole_rate).  |F(k)| -> 1 along the real axis.
struct RationalJost {
  std::vector<double> zero_rates;
  std::vector<double> pole_rates;
  bool zero_at_origin = false;

  std::complex<double> operator()(std::complex<double> k) const {
    std::complex<double> num = zero_at_origin ? k : std::complex<double>{1.0, 0.0};
    for (double z : zero_rates) num *= k - std::complex<double>{0.0, z};
    std::complex<double> den{1.0, 0.0};
    for (double p : pole_rates) {
      const std::complex<double> factor = k + std::complex<double>{0.0, p};
      if (std::abs(factor) < 1e-14 * p)
        throw invalid_wavenumber_error("jost function evaluated at a pole");
      den *= factor;
    }
    return num / den;
  }

  double modulus(double k) const { return std::abs((*this)(k)); }

  /// delta(k) = -arg F(k) on the continuous branch anchored at
  /// delta(k -> infinity) = 0; for k > 0 this is a sum of arctangents.
  double phase(double k) const {
    if (!(k > 0.0)) throw invalid_parameter_error("phase: k must be positive");
    double delta = 0.0;
    for (double z : zero_rates) delta += std::atan(z / k);
    for (double p : pole_rates) delta += std::atan(p / k);
    return delta;
  }
};

/// One bound state: chain index i (1-based), energy -a_i^2, and the
/// normalization constant [a_i prod_{j != i} |a_i^2 - a_j^2|]^{1/2}.
struct Level {
  int chain_index = 0;
  double energy = 0.0;
  double normalization = 0.0;
};

enum class Parity { even, odd };

struct ScatteringPoint {
  double k = 0.0;
  double modulus = 0.0;
  double phase = 0.0;
};

class SpectralModel {
 public:
  SpectralModel(DarbouxChain chain, std::vector<Level> levels,
                RationalJost jost, std::vector<Parity> parity,
                std::vector<ExpSum> minors, std::vector<ExpSum> row_minors)
      : chain_(std::move(chain)),
        levels_(std::move(levels)),
        jost_(std::move(jost)),
        parity_(std::move(parity)),
        minors_(std::move(minors)),
        row_minors_(std::move(row_minors)) {
    row_minor_derivs_.reserve(row_minors_.size());
    for (const ExpSum& r : row_minors_) row_minor_derivs_.push_back(r.derivative());
  }

  const DarbouxChain& chain() const noexcept { return chain_; }
  std::size_t order() const noexcept { return chain_.order(); }
  std::span<const Level> levels() const noexcept { return levels_; }
  const RationalJost& jost() const noexcept { return jost_; }
  std::span<const Parity> parity_table() const noexcept { return parity_; }

  const Level& level(std::size_t idx) const {
    if (idx >= levels_.size()) throw index_error("unknown level index");
    return levels_[idx];
  }

  /// W^{(i)} with the actual shifts, i 1-based.
  const ExpSum& minor(int i_1based) const {
    if (i_1based < 1 || static_cast<std::size_t>(i_1based) > minors_.size())
      throw index_error("minor index out of range");
    return minors_[static_cast<std::size_t>(i_1based) - 1];
  }

  std::span<const ExpSum> row_minors() const noexcept { return row_minors_; }
  std::span<const ExpSum> row_minor_derivatives() const noexcept {
    return row_minor_derivs_;
  }

 private:
  DarbouxChain chain_;
  std::vector<Level> levels_;
  RationalJost jost_;
  std::vector<Parity> parity_;
  std::vector<ExpSum> minors_;      // W^{(i)}, i = 1..N
  std::vector<ExpSum> row_minors_;  // R_m, m = 0..N (R_N = W)
  std::vector<ExpSum> row_minor_derivs_;
};

/// Builds the spectral model for rates 0 < a_1 < ... < a_N and optional
/// shifts.  Levels and the Jost zero/pole split come from the zero-shift
/// reference chain; shifts only deform the potential and eigenfunctions.
inline SpectralModel build_model(std::span<const double> rates,
                                 std::span<const double> shifts = {}) {
  DarbouxChain chain = DarbouxChain::from_rates(rates, shifts);
  const int n = static_cast<int>(chain.order());

  std::vector<ExpSum> minors;
  minors.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    minors.push_back(wronskian_minor(chain.functions(), i));

  // selection on the zero-shift reference
  const DarbouxChain reference = DarbouxChain::from_rates(rates);
  std::vector<Parity> parity;
  std::vector<int> selected;
  for (int i = 1; i <= n; ++i) {
    const ExpSum ref_minor = wronskian_minor(reference.functions(), i);
    const double at0 = ref_minor.eval_scaled(0.0).mantissa;
    const double mag = ref_minor.magnitude_scaled(0.0);
    const bool vanishes = mag == 0.0 || std::abs(at0) <= 1e-9 * mag;
    parity.push_back(vanishes ? Parity::odd : Parity::even);
    if (vanishes) selected.push_back(i);
  }
  if (selected.size() != static_cast<std::size_t>(n / 2))
    throw model_inconsistency_error(
        "origin-vanishing count does not match floor(N/2)");

  std::vector<Level> levels;
  levels.reserve(selected.size());
  for (int i : selected) {
    const double a = rates[static_cast<std::size_t>(i) - 1];
    double prod = a;
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      const double aj = rates[static_cast<std::size_t>(j) - 1];
      prod *= std::abs(a * a - aj * aj);
    }
    levels.push_back({i, -a * a, std::sqrt(prod)});
  }
  std::sort(levels.begin(), levels.end(),
            [](const Level& u, const Level& v) { return u.energy < v.energy; });

  RationalJost jost;
  jost.zero_at_origin = (n % 2 == 1);
  for (const Level& lv : levels)
    jost.zero_rates.push_back(rates[static_cast<std::size_t>(lv.chain_index) - 1]);
  std::sort(jost.zero_rates.begin(), jost.zero_rates.end());
  for (int i = 1; i <= n; ++i)
    if (std::find(selected.begin(), selected.end(), i) == selected.end())
      jost.pole_rates.push_back(rates[static_cast<std::size_t>(i) - 1]);

  std::vector<ExpSum> row_minors = bordered_row_minors(chain.functions());
  return SpectralModel{std::move(chain), std::move(levels), std::move(jost),
                       std::move(parity), std::move(minors),
                       std::move(row_minors)};
}

inline SpectralModel build_model(int n, std::span<const double> rates,
                                 std::span<const double> shifts = {}) {
  if (n < 0 || static_cast<std::size_t>(n) != rates.size())
    throw invalid_parameter_error("build_model: order does not match rates");
  return build_model(rates, shifts);
}

/// Normalized bound-state eigenfunction phi_level(x); level indexes the
/// ascending-energy list.
inline double eigenfunction(const SpectralModel& model, std::size_t level,
                            double x) {
  const Level& lv = model.level(level);
  const ScaledValue num = model.minor(lv.chain_index).eval_scaled(x);
  const ScaledValue den = model.chain().full_wronskian().eval_scaled(x);
  return lv.normalization * num.mantissa / den.mantissa *
         std::exp(num.log_scale - den.log_scale);
}

namespace detail {

// sum_m (-1)^{N+m} d_m R_m(x) / W(x) with the scaled evaluations combined
// under one exponent; d_m are the seed derivatives at x.
template <typename Scalar>
Scalar cofactor_ratio(std::span<const ExpSum> row_minors,
                      const ExpSum& wronskian, std::span<const Scalar> seed,
                      double x) {
  const std::size_t count = row_minors.size();
  std::vector<ScaledValue> parts(count);
  double log_max = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < count; ++m) {
    parts[m] = row_minors[m].eval_scaled(x);
    if (parts[m].mantissa != 0.0) log_max = std::max(log_max, parts[m].log_scale);
  }
  if (log_max == -std::numeric_limits<double>::infinity()) return Scalar{};
  Scalar sum{};
  const int n = static_cast<int>(count) - 1;
  for (std::size_t m = 0; m < count; ++m) {
    const double sign = ((n + static_cast<int>(m)) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * seed[m] * parts[m].mantissa *
           std::exp(parts[m].log_scale - log_max);
  }
  const ScaledValue w = wronskian.eval_scaled(x);
  return sum / w.mantissa * std::exp(log_max - w.log_scale);
}

}  // namespace detail

/// Jost solution f^{(N)}(k, x): solves -f'' + V_N f = k^2 f and tends to
/// e^{ikx} as x -> infinity.  k on the closed upper half plane away from
/// the prefactor poles k = -i a_j.
inline std::complex<double> jost_solution(const SpectralModel& model,
                                          std::complex<double> k, double x) {
  using cplx = std::complex<double>;
  const cplx ik{-k.imag(), k.real()};
  cplx prefactor{1.0, 0.0};
  for (const TransformationFunction& u : model.chain().functions()) {
    const cplx factor = -u.slope() + ik;
    if (std::abs(factor) < 1e-14 * u.slope())
      throw invalid_wavenumber_error("jost_solution: k hits a prefactor pole");
    prefactor *= factor;
  }
  const int n = static_cast<int>(model.order());
  std::vector<cplx> seed(static_cast<std::size_t>(n) + 1);
  cplx d{1.0, 0.0};
  for (int m = 0; m <= n; ++m) {
    seed[static_cast<std::size_t>(m)] = d;
    d *= ik;
  }
  const cplx ratio = detail::cofactor_ratio<cplx>(
      model.row_minors(), model.chain().full_wronskian(), seed, x);
  return std::exp(ik * x) * ratio / prefactor;
}

/// F^{(N)}(k), the rational Jost function.
inline std::complex<double> jost_function(const SpectralModel& model,
                                          std::complex<double> k) {
  return model.jost()(k);
}

namespace detail {

// derivatives 0..order of sin(kx)/k and cos(kx)
inline std::vector<double> sine_seed(double k, double x, int order) {
  std::vector<double> d(static_cast<std::size_t>(order) + 1);
  double amp = 1.0 / k;
  for (int m = 0; m <= order; ++m) {
    switch (m % 4) {
      case 0: d[static_cast<std::size_t>(m)] = amp * std::sin(k * x); break;
      case 1: d[static_cast<std::size_t>(m)] = amp * std::cos(k * x); break;
      case 2: d[static_cast<std::size_t>(m)] = -amp * std::sin(k * x); break;
      default: d[static_cast<std::size_t>(m)] = -amp * std::cos(k * x); break;
    }
    amp *= k;
  }
  return d;
}

inline std::vector<double> cosine_seed(double k, double x, int order) {
  std::vector<double> d(static_cast<std::size_t>(order) + 1);
  double amp = 1.0;
  for (int m = 0; m <= order; ++m) {
    switch (m % 4) {
      case 0: d[static_cast<std::size_t>(m)] = amp * std::cos(k * x); break;
      case 1: d[static_cast<std::size_t>(m)] = -amp * std::sin(k * x); break;
      case 2: d[static_cast<std::size_t>(m)] = -amp * std::cos(k * x); break;
      default: d[static_cast<std::size_t>(m)] = amp * std::sin(k * x); break;
    }
    amp *= k;
  }
  return d;
}

// value and x-derivative of the transform of a seed, using
// (sum_m +/- s^{(m)} R_m)' = sum_m +/- (s^{(m+1)} R_m + s^{(m)} R_m').
struct TransformedSeed {
  double value = 0.0;
  double slope = 0.0;
};

inline TransformedSeed transformed_seed(const SpectralModel& model,
                                        std::span<const double> seed,
                                        double x) {
  const std::size_t count = model.row_minors().size();
  const ExpSum& w = model.chain().full_wronskian();
  const ExpSum wp = w.derivative();

  std::vector<ScaledValue> r(count), rp(count);
  double log_max = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < count; ++m) {
    r[m] = model.row_minors()[m].eval_scaled(x);
    rp[m] = model.row_minor_derivatives()[m].eval_scaled(x);
    if (r[m].mantissa != 0.0) log_max = std::max(log_max, r[m].log_scale);
    if (rp[m].mantissa != 0.0) log_max = std::max(log_max, rp[m].log_scale);
  }
  const ScaledValue wv = w.eval_scaled(x);
  const ScaledValue wpv = wp.eval_scaled(x);
  if (log_max == -std::numeric_limits<double>::infinity())
    return {0.0, 0.0};

  const int n = static_cast<int>(count) - 1;
  double num = 0.0, num_prime = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    const double sign = ((n + static_cast<int>(m)) % 2 == 0) ? 1.0 : -1.0;
    const double rm = r[m].mantissa * std::exp(r[m].log_scale - log_max);
    const double rpm = rp[m].mantissa * std::exp(rp[m].log_scale - log_max);
    num += sign * seed[m] * rm;
    num_prime += sign * (seed[m + 1] * rm + seed[m] * rpm);
  }
  const double wm = wv.mantissa * std::exp(wv.log_scale - log_max);
  const double wpm = wpv.mantissa * std::exp(wpv.log_scale - log_max);
  // (num/W)' = (num' W - num W') / W^2; the common scale cancels.
  return {num / wm, (num_prime * wm - num * wpm) / (wm * wm)};
}

}  // namespace detail

/// The solution regular at the origin: psi(0) = 0 and psi'(0) = 1.  Built as
/// the combination of the transformed free seeds sin(kx)/k and cos(kx) that
/// satisfies the boundary data; for zero shifts this reduces to rescaling the
/// parity-matched seed.
inline double regular_solution(const SpectralModel& model, double k, double x) {
  if (!(k > 0.0))
    throw invalid_parameter_error("regular_solution: k must be positive");
  const int n = static_cast<int>(model.order());
  const std::vector<double> sin0 = detail::sine_seed(k, 0.0, n + 1);
  const std::vector<double> cos0 = detail::cosine_seed(k, 0.0, n + 1);
  const auto s0 = detail::transformed_seed(model, sin0, 0.0);
  const auto c0 = detail::transformed_seed(model, cos0, 0.0);

  // alpha * s + beta * c with value 0 and slope 1 at the origin; the
  // coefficient determinant is -prod_i (k^2 + a_i^2), never zero for real k.
  const double det = s0.value * c0.slope - s0.slope * c0.value;
  if (det == 0.0)
    throw model_inconsistency_error("regular_solution: degenerate seed pair");
  const double alpha = -c0.value / det;
  const double beta = s0.value / det;

  const std::vector<double> sx = detail::sine_seed(k, x, n + 1);
  const std::vector<double> cx = detail::cosine_seed(k, x, n + 1);
  const double vs = detail::transformed_seed(model, sx, x).value;
  const double vc = detail::transformed_seed(model, cx, x).value;
  return alpha * vs + beta * vc;
}

/// Modulus and continuous phase of F^{(N)} at real k > 0; the asymptotic
/// form of the regular solution is (F1/k) sin(kx + delta).
inline ScatteringPoint phase_shift(const SpectralModel& model, double k) {
  if (!(k > 0.0)) throw invalid_parameter_error("phase_shift: k must be positive");
  return {k, model.jost().modulus(k), model.jost().phase(k)};
}

struct TranslationCheck {
  double displacement = 0.0;
  double max_deviation = 0.0;
};

/// The one-step potential with shift b1 is the zero-shift potential
/// translated by Delta = -b1/a1; returns Delta and the worst pointwise
/// deviation of the two sides over x in [0, 10].
inline TranslationCheck translation_check(double a1, double b1) {
  if (!(a1 > 0.0)) throw invalid_parameter_error("translation_check: a1 must be > 0");
  const double shifts[] = {b1};
  const double rates[] = {a1};
  const DarbouxChain shifted = DarbouxChain::from_rates(rates, shifts);
  const DarbouxChain centered = DarbouxChain::from_rates(rates);
  const double delta = -b1 / a1;
  double worst = 0.0;
  for (int j = 0; j <= 1000; ++j) {
    const double x = 10.0 * j / 1000.0;
    const double lhs = transformed_potential(shifted, x);
    const double rhs = transformed_potential(centered, x - delta);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {delta, worst};
}

}  // namespace darboux
