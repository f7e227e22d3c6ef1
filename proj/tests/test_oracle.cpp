#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "darboux/chain.hpp"
#include "darboux/oracle.hpp"
#include "darboux/wronskian.hpp"

using namespace darboux;

TEST_CASE("numerov reproduces the free solutions") {
  const auto zero = [](double) { return 0.0; };

  const auto sine = oracle::integrate_schrodinger(zero, 1.0, 0.0, 1.0, 0.0, 1.0, 1e-3);
  const std::size_t last = sine.size() - 1;
  CHECK(sine.x(last) == Catch::Approx(1.0));
  CHECK(sine.values[last] == Catch::Approx(std::sin(1.0)).margin(1e-8));

  const auto expo = oracle::integrate_schrodinger(zero, -1.0, 1.0, 1.0, 0.0, 1.0, 1e-3);
  CHECK(expo.values[expo.size() - 1] == Catch::Approx(std::exp(1.0)).margin(1e-8));
}

TEST_CASE("numerov error falls at fourth order") {
  const auto zero = [](double) { return 0.0; };
  auto max_error = [&](double h) {
    const auto sol = oracle::integrate_schrodinger(zero, 1.0, 0.0, 1.0, 0.0, 10.0, h);
    double worst = 0.0;
    for (std::size_t j = 0; j < sol.size(); ++j)
      worst = std::max(worst, std::abs(sol.values[j] - std::sin(sol.x(j))));
    return worst;
  };
  const double coarse = max_error(0.02);
  const double fine = max_error(0.01);
  CHECK(coarse / fine >= 14.0);
}

TEST_CASE("numerov rejects non-finite potentials") {
  const auto bad = [](double x) {
    return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
  };
  CHECK_THROWS_AS(
      oracle::integrate_schrodinger(bad, 1.0, 0.0, 1.0, 0.0, 1.0, 1e-2),
      integration_error);
}

TEST_CASE("free and one-step potentials have no negative Dirichlet eigenvalues") {
  const auto zero = [](double) { return 0.0; };
  CHECK(oracle::eigen_semiaxis(zero, 40.0, 2000).eigenvalues.empty());

  const auto v1 = [](double x) {
    const double c = std::cosh(x);
    return -2.0 / (c * c);
  };
  CHECK(oracle::eigen_semiaxis(v1, 40.0, 4000).eigenvalues.empty());
}

TEST_CASE("two-step potential has a single level near -1") {
  const double rates[] = {1.0, 2.0};
  const DarbouxChain chain = DarbouxChain::from_rates(rates);
  const auto V = [&](double x) { return transformed_potential(chain, x); };
  const auto result = oracle::eigen_semiaxis(V, 40.0, 4000);
  REQUIRE(result.eigenvalues.size() == 1);
  CHECK(result.eigenvalues[0] == Catch::Approx(-1.0).margin(1e-3));

  // second-order discretization: the error contracts by about 4x
  const double e1 = oracle::eigen_semiaxis(V, 40.0, 4000).eigenvalues[0];
  const double e2 = oracle::eigen_semiaxis(V, 40.0, 8000).eigenvalues[0];
  const double e3 = oracle::eigen_semiaxis(V, 40.0, 16000).eigenvalues[0];
  const double ratio = (e1 - e2) / (e2 - e3);
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);

  // truncation insensitivity: identical step h = 0.01, longer box
  const double e60 = oracle::eigen_semiaxis(V, 60.0, 5999).eigenvalues[0];
  const double e40 = oracle::eigen_semiaxis(V, 40.0, 3999).eigenvalues[0];
  CHECK(std::abs(e60 - e40) < 1e-8);
}

TEST_CASE("eigenvectors satisfy the discrete equation") {
  const double rates[] = {1.0, 2.0};
  const DarbouxChain chain = DarbouxChain::from_rates(rates);
  const auto V = [&](double x) { return transformed_potential(chain, x); };
  const auto result = oracle::eigen_semiaxis(V, 40.0, 2000);
  REQUIRE(result.eigenvalues.size() == 1);
  const auto& vec = result.eigenvectors[0];
  const double h = result.h;
  const double lam = result.eigenvalues[0];
  double residual = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    const double left = i > 0 ? vec.values[i - 1] : 0.0;
    const double right = i + 1 < vec.size() ? vec.values[i + 1] : 0.0;
    const double hv = (-left + 2.0 * vec.values[i] - right) / (h * h) +
                      V(vec.x(i)) * vec.values[i];
    residual += (hv - lam * vec.values[i]) * (hv - lam * vec.values[i]);
    norm += vec.values[i] * vec.values[i];
  }
  CHECK(std::sqrt(residual / norm) < 1e-8);
}

TEST_CASE("quadrature integrates smooth decaying functions") {
  const double sech2 = oracle::quadrature(
      [](double x) {
        const double c = std::cosh(x);
        return 1.0 / (c * c);
      },
      0.0, 40.0, 1e-10);
  CHECK(sech2 == Catch::Approx(1.0).margin(1e-9));

  CHECK(oracle::quadrature([](double) { return 0.0; }, 0.0, 1.0, 1e-10) == 0.0);
}

TEST_CASE("quadrature reports non-convergence") {
  // a huge step cannot be resolved within the refinement budget at this tol
  const auto step = [](double x) { return x > 0.3711 ? 1e8 : 0.0; };
  CHECK_THROWS_AS(oracle::quadrature(step, 0.0, 1.0, 1e-12), accuracy_error);
}

TEST_CASE("numerical wronskian handles single functions and known values") {
  const TransformationFunction u = cosh_function(1.3, 0.2);
  const std::vector<oracle::DerivativeFn> one{
      [&u](int order, double x) { return u.derivative(order, x); }};
  for (double x : {-0.5, 0.0, 1.1})
    CHECK(oracle::numerical_wronskian(one, x) == Catch::Approx(u.value(x)));

  const TransformationFunction u1 = cosh_function(1.0);
  const TransformationFunction u2 = sinh_function(2.0);
  const std::vector<oracle::DerivativeFn> two{
      [&u1](int order, double x) { return u1.derivative(order, x); },
      [&u2](int order, double x) { return u2.derivative(order, x); }};
  CHECK(oracle::numerical_wronskian(two, 0.0) == Catch::Approx(2.0));
}

TEST_CASE("numerical wronskian cross-checks the closed form at order four") {
  std::mt19937 rng(13579);
  std::uniform_real_distribution<double> xs(-5.0, 5.0);
  const double rates[] = {0.7, 1.4, 2.3, 3.1};
  const DarbouxChain chain = DarbouxChain::from_rates(rates);
  std::vector<oracle::DerivativeFn> derivs;
  for (const TransformationFunction& u : chain.functions())
    derivs.emplace_back([u](int order, double x) { return u.derivative(order, x); });
  const ExpSum& w = chain.full_wronskian();
  for (int rep = 0; rep < 50; ++rep) {
    const double x = xs(rng);
    const double numeric = oracle::numerical_wronskian(derivs, x);
    REQUIRE(std::abs(w(x) - numeric) / (1.0 + std::abs(numeric)) < 1e-9);
  }
}
