#pragma once

// Application of first-order transformation operators and their chains.
//
// With D = +d/dx the first-order operator with transformation function u is
//
//   L psi = psi' - (u'/u) psi,           ker L = span{u},
//
// and the composed N-step operator admits two independent realizations that
// the tests compare against each other:
//
//   * the bordered-Wronskian determinant  L^{(N)} psi = W(u_1..u_N, psi) / W,
//   * the literal chain L_N ... L_1 where step i uses the dressed function
//     U_i (u_i pushed through the previous i-1 steps), evaluated with jet
//     arithmetic and no Wronskians at all.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "darboux/analytic_solution.hpp"
#include "darboux/chain.hpp"
#include "darboux/errors.hpp"
#include "darboux/grid.hpp"
#include "darboux/jet.hpp"
#include "darboux/oracle.hpp"

namespace darboux {

/// One first-order step at jet level: (L psi) = psi' - (u'/u) psi, losing one
/// derivative order.  u must not vanish at the expansion point.
inline Jet first_order_step(const Jet& u, const Jet& psi) {
  const int m = std::min(u.order(), psi.order()) - 1;
  if (m < 0) throw contract_error("first_order_step: derivative order exhausted");
  const Jet logd = Jet::divide(u.derivative().truncated(m), u.truncated(m));
  return psi.derivative().truncated(m) - logd * psi.truncated(m);
}

/// (L psi)(x) for a single transformation function given as an ExpSum.
inline std::complex<double> first_order_apply(const ExpSum& u,
                                              const AnalyticSolution& psi,
                                              double x) {
  const Jet logd = logarithmic_derivative_jet(u, x, 0);
  const Jet p = psi.jet_at(x, 1);
  if (p.order() < 1) throw contract_error("first_order_apply: need psi and psi'");
  return p[1] - logd.value() * p[0];
}

inline std::complex<double> first_order_apply(const TransformationFunction& u,
                                              const AnalyticSolution& psi,
                                              double x) {
  return first_order_apply(u.to_exp_sum(), psi, x);
}

/// Determinant realization: the (N+1) x (N+1) bordered Wronskian whose last
/// column is (psi, psi', ..., psi^{(N)}), divided by W(u_1,...,u_N).
/// Columns are scaled before elimination so the growth of the u_j cancels.
inline std::complex<double> crum_apply(const DarbouxChain& chain,
                                       const AnalyticSolution& psi, double x) {
  using cplx = std::complex<double>;
  const int n = static_cast<int>(chain.order());
  const Jet p = psi.jet_at(x, n);
  if (p.order() < n)
    throw contract_error("crum_apply: solution supplied too few derivatives");
  if (n == 0) return p.value();

  const std::size_t dim = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<cplx>> m(dim, std::vector<cplx>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    for (int c = 0; c < n; ++c)
      m[r][static_cast<std::size_t>(c)] =
          chain.function(static_cast<std::size_t>(c) + 1)
              .derivative(static_cast<int>(r), x);
    m[r][dim - 1] = p[r];
  }

  // factor out per-column magnitudes, tracked in log space
  double log_col_scale = 0.0;
  for (std::size_t c = 0; c < dim; ++c) {
    double mx = 0.0;
    for (std::size_t r = 0; r < dim; ++r) mx = std::max(mx, std::abs(m[r][c]));
    if (mx == 0.0) return 0.0;
    for (std::size_t r = 0; r < dim; ++r) m[r][c] /= mx;
    log_col_scale += std::log(mx);
  }

  cplx det{1.0, 0.0};
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < dim; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (m[piv][col] == cplx{}) return 0.0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < dim; ++r) {
      const cplx f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < dim; ++c) m[r][c] -= f * m[col][c];
    }
  }

  const ScaledValue w = chain.full_wronskian().eval_scaled(x);
  const double wmag = chain.full_wronskian().magnitude_scaled(x);
  if (wmag == 0.0 || std::abs(w.mantissa) < 1e-12 * wmag)
    throw pole_error("crum_apply: Wronskian vanishes", x);
  return det * std::exp(log_col_scale - w.log_scale) / w.mantissa;
}

namespace detail {

// Jets of the dressed transformation functions U_1..U_N at x, each carried
// to `order`.  U_i is u_i pushed through steps 1..i-1; no Wronskians enter.
inline std::vector<Jet> dressed_kernel_jets(const DarbouxChain& chain, double x,
                                            int order) {
  const int n = static_cast<int>(chain.order());
  std::vector<Jet> dressed;
  dressed.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    dressed.push_back(hyperbolic_solution(chain.function(static_cast<std::size_t>(j) + 1))
                          .jet_at(x, order + n));
  std::vector<Jet> kernels;
  kernels.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    kernels.push_back(dressed[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < n; ++j)
      dressed[static_cast<std::size_t>(j)] =
          first_order_step(dressed[static_cast<std::size_t>(i)], dressed[static_cast<std::size_t>(j)]);
  }
  return kernels;
}

}  // namespace detail

/// Chain realization of the composed operator: applies the N first-order
/// steps one by one (dressing route).  Agreement with crum_apply is a tested
/// property, not an assumption.
inline std::complex<double> iterated_apply(const DarbouxChain& chain,
                                           const AnalyticSolution& psi,
                                           double x) {
  const int n = static_cast<int>(chain.order());
  Jet phi = psi.jet_at(x, n);
  if (phi.order() < n)
    throw contract_error("iterated_apply: solution supplied too few derivatives");
  if (n == 0) return phi.value();
  const std::vector<Jet> kernels = detail::dressed_kernel_jets(chain, x, n);
  for (int i = 0; i < n; ++i) phi = first_order_step(kernels[static_cast<std::size_t>(i)], phi);
  return phi.value();
}

/// L^{(N)+} L^{(N)} psi at x through the chain of first-order adjoints
/// L_i^+ = -D - U_i'/U_i built from the transformed-side kernels 1/U_i.
/// On an eigensolution this must equal prod_i (E - C_i) psi.
inline std::complex<double> factorization_apply(const DarbouxChain& chain,
                                                const AnalyticSolution& psi,
                                                double x) {
  const int n = static_cast<int>(chain.order());
  Jet phi = psi.jet_at(x, 2 * n);
  if (phi.order() < 2 * n)
    throw contract_error("factorization_apply: solution supplied too few derivatives");
  if (n == 0) return phi.value();
  const std::vector<Jet> kernels = detail::dressed_kernel_jets(chain, x, 2 * n);
  std::vector<Jet> logds;
  logds.reserve(static_cast<std::size_t>(n));
  for (const Jet& u : kernels) {
    const int m = u.order() - 1;
    logds.push_back(Jet::divide(u.derivative().truncated(m), u.truncated(m)));
  }
  for (int i = 0; i < n; ++i) {
    const int m = phi.order() - 1;
    phi = phi.derivative().truncated(m) - logds[static_cast<std::size_t>(i)].truncated(m) * phi.truncated(m);
  }
  for (int i = n - 1; i >= 0; --i) {
    const int m = phi.order() - 1;
    phi = (-1.0) * phi.derivative().truncated(m) -
          logds[static_cast<std::size_t>(i)].truncated(m) * phi.truncated(m);
  }
  return phi.value();
}

/// Max residual of the transformed equation -phi'' + V_N phi = E phi for
/// phi = L^{(N)} psi, with phi'' from the fourth-order central stencil on the
/// grid samples.  The residual is measured relative to max(1, sup |phi|), so
/// it reflects the equation error rather than the solution's magnitude.
inline double verify_intertwining(const DarbouxChain& chain,
                                  const AnalyticSolution& psi,
                                  const UniformGrid& grid) {
  using cplx = std::complex<double>;
  if (grid.n < 5)
    throw invalid_parameter_error("verify_intertwining: need >= 5 grid points");
  std::vector<cplx> phi(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) phi[j] = crum_apply(chain, psi, grid.x(j));
  double sup = 0.0;
  for (const cplx& v : phi) sup = std::max(sup, std::abs(v));
  const double scale = std::max(1.0, sup);
  const double h2 = grid.h * grid.h;
  double worst = 0.0;
  for (std::size_t j = 2; j + 2 < grid.n; ++j) {
    const cplx second = (-phi[j - 2] + 16.0 * phi[j - 1] - 30.0 * phi[j] +
                         16.0 * phi[j + 1] - phi[j + 2]) /
                        (12.0 * h2);
    const double v = transformed_potential(chain, grid.x(j));
    const cplx residual = -second + v * phi[j] - psi.energy * phi[j];
    worst = std::max(worst, std::abs(residual));
  }
  return worst / scale;
}

/// Max over the samples of |L^+ L psi - prod_i (E - C_i) psi|.
inline double verify_factorization(const DarbouxChain& chain,
                                   const AnalyticSolution& psi,
                                   std::span<const double> samples) {
  const std::complex<double> mult = chain.factorization_polynomial(psi.energy);
  double worst = 0.0;
  for (double x : samples) {
    const std::complex<double> lhs = factorization_apply(chain, psi, x);
    const std::complex<double> rhs = mult * psi.value(x);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

/// Second linearly independent solution at E = -a_i^2 by reduction of order:
/// v_i(x) = -vt_i(x) * int_{x0}^{x} vt_i(t)^{-2} dt with vt_i = W^{(i)}/W,
/// normalized so W(v_i, vt_i) = 1.  The base point x0 is placed at the
/// largest |vt_i| sample; a zero of vt_i between x0 and x raises
/// integration_path_error.
inline double second_solution(const DarbouxChain& chain, int i_1based, double x) {
  const int n = static_cast<int>(chain.order());
  if (i_1based < 1 || i_1based > n)
    throw index_error("second_solution: index out of range");
  const ExpSum minor = wronskian_minor(chain.functions(), i_1based);
  const ExpSum& w = chain.full_wronskian();

  auto vt = [&](double t) {
    const ScaledValue num = minor.eval_scaled(t);
    const ScaledValue den = w.eval_scaled(t);
    return num.mantissa / den.mantissa * std::exp(num.log_scale - den.log_scale);
  };

  // scan for the base point over the working window
  const double span = 40.0 / chain.function(1).slope();
  const int scan_points = 2000;
  double x0 = 0.0, best = -1.0;
  for (int j = 0; j <= scan_points; ++j) {
    const double t = span * j / scan_points;
    const double v = std::abs(vt(t));
    if (v > best) {
      best = v;
      x0 = t;
    }
  }

  const double lo = std::min(x0, x), hi = std::max(x0, x);
  const double v_ref = vt(x0);
  for (int j = 0; j <= 400; ++j) {
    const double t = lo + (hi - lo) * j / 400.0;
    if (vt(t) * v_ref <= 0.0)
      throw integration_path_error(
          "second_solution: path crosses a zero of the reference solution");
  }

  auto integrand = [&](double t) {
    const double v = vt(t);
    return 1.0 / (v * v);
  };
  // pilot estimate sets an absolute tolerance matched to the integral's scale
  double pilot = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double t = x0 + (x - x0) * (j + 0.5) / 64.0;
    pilot += integrand(t) * (x - x0) / 64.0;
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(pilot));
  const double integral = oracle::quadrature(integrand, x0, x, tol);
  return -vt(x) * integral;
}

}  // namespace darboux
