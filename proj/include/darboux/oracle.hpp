#pragma once

// Independent brute-force numerics used to validate the closed forms:
// Numerov integration, a symmetric-tridiagonal eigensolver for the truncated
// semiaxis, adaptive quadrature, and numerical Wronskians.  Nothing in this
// header depends on the closed-form machinery it is meant to check.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "darboux/errors.hpp"
#include "darboux/grid.hpp"

namespace darboux::oracle {

using Potential = std::function<double(double)>;

/// Fixed-step Numerov integration of -y'' + V y = E y from (y0, y0') at x0
/// to x1; global error O(h^4) on smooth potentials.  The first step is seeded
/// with a few RK4 substeps so no derivative of V is needed.
template <typename Scalar = double>
GridFunction<Scalar> integrate_schrodinger(const Potential& V, double E,
                                           Scalar y0, Scalar y0p, double x0,
                                           double x1, double h) {
  if (!(h > 0.0) || !(x1 > x0))
    throw invalid_parameter_error("integrate_schrodinger: bad range or step");
  const auto n = static_cast<std::size_t>(std::llround((x1 - x0) / h)) + 1;
  if (n < 5) throw invalid_parameter_error("integrate_schrodinger: too few steps");

  auto f = [&](double x) {
    const double v = V(x);
    if (!std::isfinite(v))
      throw integration_error("integrate_schrodinger: non-finite potential");
    return v - E;  // y'' = (V - E) y
  };

  GridFunction<Scalar> out;
  out.x0 = x0;
  out.h = h;
  out.values.resize(n);
  out.values[0] = y0;

  // RK4 substeps for y(x0 + h).
  {
    Scalar y = y0, yp = y0p;
    const int sub = 16;
    const double hs = h / sub;
    for (int s = 0; s < sub; ++s) {
      const double x = x0 + s * hs;
      const Scalar k1y = yp, k1p = f(x) * y;
      const Scalar k2y = yp + 0.5 * hs * k1p, k2p = f(x + 0.5 * hs) * (y + 0.5 * hs * k1y);
      const Scalar k3y = yp + 0.5 * hs * k2p, k3p = f(x + 0.5 * hs) * (y + 0.5 * hs * k2y);
      const Scalar k4y = yp + hs * k3p, k4p = f(x + hs) * (y + hs * k3y);
      y += hs / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
      yp += hs / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    }
    out.values[1] = y;
  }

  const double h2_12 = h * h / 12.0;
  double f_prev = f(x0);
  double f_curr = f(x0 + h);
  for (std::size_t j = 2; j < n; ++j) {
    const double x = x0 + static_cast<double>(j) * h;
    const double f_next = f(x);
    const Scalar num = 2.0 * (1.0 + 5.0 * h2_12 * f_curr) * out.values[j - 1] -
                       (1.0 - h2_12 * f_prev) * out.values[j - 2];
    out.values[j] = num / (1.0 - h2_12 * f_next);
    f_prev = f_curr;
    f_curr = f_next;
  }
  return out;
}

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending, all < 0
  std::vector<GridFunction<double>> eigenvectors;
  double domain_length = 0.0;
  double h = 0.0;
};

namespace detail {

// Number of eigenvalues of the symmetric tridiagonal (diag, off) below lam,
// by the standard Sturm/LDL^T count.  The first pivot carries no
// off-diagonal correction.
inline int sturm_count(std::span<const double> diag, double off2, double lam) {
  int count = 0;
  double d = diag[0] - lam;
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    if (d == 0.0) d = std::numeric_limits<double>::min();
    d = diag[i] - lam - off2 / d;
    if (d < 0.0) ++count;
  }
  return count;
}

// Solve (T - sigma I) x = b with partial pivoting; T tridiagonal with
// constant off-diagonal `off`.
inline void shifted_tridiag_solve(std::span<const double> diag, double off,
                                  double sigma, std::vector<double>& x) {
  const std::size_t n = diag.size();
  std::vector<double> a(n), b(n, off), c(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i] = diag[i] - sigma;
  b[n - 1] = 0.0;
  // forward elimination with row swaps; fill-in limited to c.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double sub = off;  // element (i+1, i)
    if (std::abs(sub) > std::abs(a[i])) {
      std::swap(a[i], sub);
      std::swap(b[i], a[i + 1]);
      std::swap(c[i], b[i + 1]);
      std::swap(x[i], x[i + 1]);
    }
    if (a[i] == 0.0) a[i] = std::numeric_limits<double>::min();
    const double m = sub / a[i];
    a[i + 1] -= m * b[i];
    b[i + 1] -= m * c[i];
    x[i + 1] -= m * x[i];
  }
  if (a[n - 1] == 0.0) a[n - 1] = std::numeric_limits<double>::min();
  x[n - 1] /= a[n - 1];
  if (n >= 2) x[n - 2] = (x[n - 2] - b[n - 2] * x[n - 1]) / a[n - 2];
  for (std::size_t ir = n; ir-- > 2;) {
    const std::size_t i = ir - 2;
    x[i] = (x[i] - b[i] * x[i + 1] - c[i] * x[i + 2]) / a[i];
  }
}

}  // namespace detail

/// All negative eigenvalues (with eigenvectors) of the central-difference
/// discretization of -D^2 + V on [0, L] with Dirichlet ends.  Bisection on
/// the Sturm count, then inverse iteration; the matrix is never formed
/// beyond its diagonal.
inline EigenResult eigen_semiaxis(const Potential& V, double L, std::size_t n) {
  if (!(L > 0.0) || n < 100)
    throw invalid_parameter_error("eigen_semiaxis: need L > 0 and n >= 100");
  const double h = L / static_cast<double>(n + 1);
  const double off = -1.0 / (h * h);
  const double off2 = off * off;
  std::vector<double> diag(n);
  double vmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double v = V(h * static_cast<double>(i + 1));
    if (!std::isfinite(v)) throw integration_error("eigen_semiaxis: non-finite potential");
    diag[i] = 2.0 / (h * h) + v;
    vmin = std::min(vmin, v);
  }

  EigenResult result;
  result.domain_length = L;
  result.h = h;
  const int negatives = detail::sturm_count(diag, off2, 0.0);
  if (negatives == 0) return result;

  double lo_all = vmin - 1.0;  // Gershgorin-type lower bound for bound states
  for (int idx = 0; idx < negatives; ++idx) {
    double lo = lo_all, hi = 0.0;
    while (hi - lo > 1e-13 * std::max(1.0, std::abs(lo))) {
      const double mid = 0.5 * (lo + hi);
      if (detail::sturm_count(diag, off2, mid) > idx)
        hi = mid;
      else
        lo = mid;
    }
    result.eigenvalues.push_back(0.5 * (lo + hi));
  }

  for (double lam : result.eigenvalues) {
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    const double sigma = lam + 1e-11 * std::max(1.0, std::abs(lam));
    for (int it = 0; it < 3; ++it) {
      detail::shifted_tridiag_solve(diag, off, sigma, v);
      double norm = 0.0;
      for (double c : v) norm += c * c;
      norm = std::sqrt(norm);
      for (double& c : v) c /= norm;
    }
    // unit discrete L2 norm: h * sum v^2 = 1
    const double scale = 1.0 / std::sqrt(h);
    GridFunction<double> vec;
    vec.x0 = h;
    vec.h = h;
    vec.values.resize(n);
    double sign = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(v[i]) > 1e-8) {
        sign = v[i] > 0.0 ? 1.0 : -1.0;
        break;
      }
    for (std::size_t i = 0; i < n; ++i) vec.values[i] = sign * scale * v[i];
    result.eigenvectors.push_back(std::move(vec));
  }
  return result;
}

/// Adaptive Simpson quadrature.  Throws accuracy_error when the refinement
/// budget is exhausted before the local error estimate meets the tolerance.
inline double quadrature(const std::function<double(double)>& f, double a,
                         double b, double tol = 1e-10) {
  if (!(tol > 0.0)) throw invalid_parameter_error("quadrature: tol must be > 0");
  if (a == b) return 0.0;
  struct Rec {
    const std::function<double(double)>& f;
    double run(double a, double b, double fa, double fm, double fb, double whole,
               double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      // second condition: the local estimate sits at the roundoff floor
      if (std::abs(delta) <= 15.0 * tol ||
          std::abs(delta) <= 4e-16 * (std::abs(left) + std::abs(right)) ||
          (b - a) < 1e-14 * std::abs(m))
        return left + right + delta / 15.0;
      if (depth <= 0)
        throw accuracy_error("quadrature: refinement budget exhausted");
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  } rec{f};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return rec.run(a, b, fa, fm, fb, whole, tol, 40);
}

/// Adaptive quadrature summed over equal panels.  Use for integrands
/// concentrated in a small part of the range, which a single adaptive pass
/// can miss entirely.
inline double quadrature_piecewise(const std::function<double(double)>& f,
                                   double a, double b, int panels,
                                   double tol = 1e-10) {
  if (panels < 1) throw invalid_parameter_error("quadrature_piecewise: panels >= 1");
  const double w = (b - a) / panels;
  double total = 0.0;
  for (int j = 0; j < panels; ++j)
    total += quadrature(f, a + j * w, a + (j + 1) * w, tol / panels);
  return total;
}

/// Callback producing the order-th derivative of one function at x.
using DerivativeFn = std::function<double(int order, double x)>;

/// N x N Wronskian determinant from analytically supplied derivatives, by
/// Gaussian elimination with partial pivoting.  Test-side oracle for the
/// closed-form Wronskians.
inline double numerical_wronskian(std::span<const DerivativeFn> funcs, double x) {
  const std::size_t n = funcs.size();
  if (n == 0) return 1.0;
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m[r][c] = funcs[c](static_cast<int>(r), x);
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

/// Oracle grid density override for slow environments; reads the
/// DARBOUX_ORACLE_GRID environment variable (positive integer).
inline std::size_t oracle_grid_points(std::size_t fallback) {
  if (const char* env = std::getenv("DARBOUX_ORACLE_GRID")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 100) return static_cast<std::size_t>(v);
  }
  return fallback;
}

}  // namespace darboux::oracle
