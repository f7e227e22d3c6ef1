#pragma once

// Verification suites shared by the `verify` CLI command: each check pits a
// closed-form quantity against an independent numerical route and reports
// the residual next to its tolerance.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "darboux/analytic_solution.hpp"
#include "darboux/chain.hpp"
#include "darboux/darboux_operator.hpp"
#include "darboux/oracle.hpp"
#include "darboux/spectral.hpp"

namespace darboux {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline CheckResult make_check(std::string name, double residual, double tol) {
  CheckResult c;
  c.name = std::move(name);
  c.residual = residual;
  c.tolerance = tol;
  c.pass = residual < tol;
  return c;
}

/// Closed-form Wronskian vs the elimination determinant on random abscissas.
inline CheckResult check_wronskian_equivalence(const SpectralModel& model,
                                               unsigned seed = 20260401) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> xs(-5.0, 5.0);
  std::vector<oracle::DerivativeFn> derivs;
  for (const TransformationFunction& u : model.chain().functions())
    derivs.emplace_back([u](int order, double x) { return u.derivative(order, x); });
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double x = xs(rng);
    const double numeric = oracle::numerical_wronskian(derivs, x);
    const double closed = model.chain().full_wronskian()(x);
    worst = std::max(worst, std::abs(closed - numeric) / (1.0 + std::abs(numeric)));
  }
  return make_check("wronskian-closed-form-vs-determinant", worst, 1e-9);
}

/// Transformed plane waves satisfy the transformed equation.
inline CheckResult check_intertwining(const SpectralModel& model) {
  const UniformGrid grid{0.5, 1e-3, 3001};
  double worst = 0.0;
  for (double e : {-4.0, -0.25, 1.0, 9.0}) {
    const std::complex<double> k =
        e >= 0.0 ? std::complex<double>{std::sqrt(e), 0.0}
                 : std::complex<double>{0.0, std::sqrt(-e)};
    worst = std::max(worst, verify_intertwining(model.chain(), plane_wave(k), grid));
  }
  return make_check("intertwining-residual", worst, 1e-6);
}

/// L^+ L equals the factorization polynomial on plane waves.
inline CheckResult check_factorization(const SpectralModel& model) {
  std::vector<double> xs;
  for (int j = 0; j <= 60; ++j) xs.push_back(3.0 * j / 60.0);
  double worst = 0.0;
  for (double e : {1.0, 4.0}) {
    const AnalyticSolution psi = plane_wave(std::sqrt(e));
    worst = std::max(worst, verify_factorization(model.chain(), psi, xs));
  }
  return make_check("factorization-identity", worst, 1e-5);
}

/// Bound-state eigenfunctions are unit-normalized on the semiaxis.
inline CheckResult check_normalization(const SpectralModel& model) {
  double worst = 0.0;
  const double upper = 40.0 / model.chain().function(1).slope();
  for (std::size_t lv = 0; lv < model.levels().size(); ++lv) {
    const double integral = oracle::quadrature_piecewise(
        [&](double x) {
          const double phi = eigenfunction(model, lv, x);
          return phi * phi;
        },
        0.0, upper, 40, 1e-9);
    worst = std::max(worst, std::abs(integral - 1.0));
  }
  return make_check("eigenfunction-normalization", worst, 1e-5);
}

/// Model levels match the finite-difference Dirichlet spectrum of the
/// zero-shift reference potential (shifts deform the potential but the
/// level list is defined by the reference chain).
inline CheckResult check_oracle_spectrum(const SpectralModel& model) {
  const double a1 = model.chain().function(1).slope();
  std::vector<double> rates;
  for (const TransformationFunction& u : model.chain().functions())
    rates.push_back(u.slope());
  const DarbouxChain reference = DarbouxChain::from_rates(rates);
  const std::size_t n = oracle::oracle_grid_points(16000);
  const auto result = oracle::eigen_semiaxis(
      [&](double x) { return transformed_potential(reference, x); },
      40.0 / a1, n);
  double worst = 0.0;
  if (result.eigenvalues.size() != model.levels().size()) {
    worst = std::numeric_limits<double>::infinity();
  } else {
    for (std::size_t i = 0; i < model.levels().size(); ++i)
      worst = std::max(worst, std::abs(result.eigenvalues[i] - model.level(i).energy));
  }
  return make_check("oracle-spectrum-agreement", worst, 1e-3);
}

/// The full `verify` battery for one model.
inline std::vector<CheckResult> verify_model(const SpectralModel& model) {
  std::vector<CheckResult> checks;
  checks.push_back(check_wronskian_equivalence(model));
  checks.push_back(check_intertwining(model));
  checks.push_back(check_factorization(model));
  checks.push_back(check_normalization(model));
  checks.push_back(check_oracle_spectrum(model));
  return checks;
}

}  // namespace darboux
