#pragma once

#include <cstddef>
#include <vector>

#include "darboux/errors.hpp"

namespace darboux {

/// Uniform abscissas x_j = x0 + j h, j = 0..n-1.
struct UniformGrid {
  double x0 = 0.0;
  double h = 1.0;
  std::size_t n = 0;

  double x(std::size_t j) const { return x0 + static_cast<double>(j) * h; }
  double back() const { return x(n - 1); }

  std::vector<double> points() const {
    std::vector<double> xs(n);
    for (std::size_t j = 0; j < n; ++j) xs[j] = x(j);
    return xs;
  }
};

inline UniformGrid make_grid(double x0, double x1, std::size_t n) {
  if (n < 2 || !(x1 > x0)) throw invalid_parameter_error("make_grid: bad range");
  return {x0, (x1 - x0) / static_cast<double>(n - 1), n};
}

/// Function sampled on a uniform grid; needs >= 5 points so fourth-order
/// stencils apply.
template <typename Scalar>
struct GridFunction {
  double x0 = 0.0;
  double h = 0.0;
  std::vector<Scalar> values;

  std::size_t size() const { return values.size(); }
  double x(std::size_t j) const { return x0 + static_cast<double>(j) * h; }
};

}  // namespace darboux
