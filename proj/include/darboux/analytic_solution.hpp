#pragma once

// Solutions of the base equation -psi'' = E psi supplied with exact
// derivatives of any order, the raw material every operator application
// consumes.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "darboux/errors.hpp"
#include "darboux/exp_sum.hpp"
#include "darboux/jet.hpp"
#include "darboux/transformation.hpp"

namespace darboux {

/// A solution of the base Schrodinger equation together with a callback that
/// produces its jet (value and derivatives 0..order) at any point.
struct AnalyticSolution {
  std::complex<double> energy;
  std::function<Jet(double x, int order)> jet_at;

  std::complex<double> value(double x) const { return jet_at(x, 0).value(); }
};

/// e^{ikx} with E = k^2; k may be complex (imaginary k covers the
/// bound-state range).
inline AnalyticSolution plane_wave(std::complex<double> k) {
  return {k * k, [k](double x, int order) {
            const std::complex<double> ik{-k.imag(), k.real()};
            std::vector<Jet::value_type> d(static_cast<std::size_t>(order) + 1);
            d[0] = std::exp(ik * x);
            for (int m = 1; m <= order; ++m) d[static_cast<std::size_t>(m)] = ik * d[static_cast<std::size_t>(m - 1)];
            return Jet{std::move(d)};
          }};
}

/// sin(kx)/k, the free solution regular at the origin; E = k^2.
inline AnalyticSolution regular_sine(double k) {
  if (k == 0.0) throw invalid_parameter_error("regular_sine: k must be nonzero");
  return {k * k, [k](double x, int order) {
            std::vector<Jet::value_type> d(static_cast<std::size_t>(order) + 1);
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
            return Jet{std::move(d)};
          }};
}

/// cos(kx), the free solution with unit value at the origin; E = k^2.
inline AnalyticSolution cosine_solution(double k) {
  return {k * k, [k](double x, int order) {
            std::vector<Jet::value_type> d(static_cast<std::size_t>(order) + 1);
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
            return Jet{std::move(d)};
          }};
}

/// The transformation function itself as a solution, E = -a^2.
inline AnalyticSolution hyperbolic_solution(const TransformationFunction& u) {
  return {u.eigenvalue(), [u](double x, int order) {
            std::vector<Jet::value_type> d(static_cast<std::size_t>(order) + 1);
            for (int m = 0; m <= order; ++m) d[static_cast<std::size_t>(m)] = u.derivative(m, x);
            return Jet{std::move(d)};
          }};
}

/// An exponential sum as a solution with caller-supplied energy.
inline AnalyticSolution expsum_solution(const ExpSum& s,
                                        std::complex<double> energy) {
  return {energy,
          [s](double x, int order) { return expsum_jet(s, x, order); }};
}

}  // namespace darboux
