#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "darboux/analytic_solution.hpp"
#include "darboux/chain.hpp"
#include "darboux/darboux_operator.hpp"
#include "darboux/oracle.hpp"

using namespace darboux;
using cplx = std::complex<double>;

TEST_CASE("solution factories satisfy the base equation") {
  // derivatives must obey -psi'' = E psi identically
  std::vector<AnalyticSolution> sols;
  sols.push_back(plane_wave(cplx{1.3, 0.0}));
  sols.push_back(plane_wave(cplx{0.0, 0.8}));
  sols.push_back(regular_sine(2.1));
  sols.push_back(cosine_solution(0.6));
  sols.push_back(hyperbolic_solution(cosh_function(1.4, 0.3)));
  sols.push_back(expsum_solution(ExpSum::single(2.0, -0.5), cplx{-0.25, 0.0}));
  for (const AnalyticSolution& psi : sols) {
    for (double x : {0.0, 0.7, 2.4}) {
      const Jet jet = psi.jet_at(x, 4);
      for (int m = 0; m + 2 <= 4; ++m) {
        const cplx residual = -jet[static_cast<std::size_t>(m) + 2] - psi.energy * jet[static_cast<std::size_t>(m)];
        REQUIRE(std::abs(residual) < 1e-10 * std::max(1.0, std::abs(jet[static_cast<std::size_t>(m)])));
      }
    }
  }
}

TEST_CASE("first-order operator annihilates its transformation function") {
  const TransformationFunction u = cosh_function(1.0, 0.0);
  const AnalyticSolution psi = hyperbolic_solution(u);
  for (double x : {-1.0, 0.0, 0.6, 2.8})
    CHECK(std::abs(first_order_apply(u, psi, x)) < 1e-14 * std::abs(u.value(x)));
}

TEST_CASE("first-order operator maps the conjugate solution to 1/u") {
  // with W(u, ut) = 1: u = cosh(ax), ut = sinh(ax)/a
  const double a = 1.0;
  const TransformationFunction u = cosh_function(a);
  const AnalyticSolution ut =
      expsum_solution(exp_sum_from_hyperbolic(HyperbolicKind::sinh, a, 0.0) * (1.0 / a),
                      -a * a);
  for (double x : {-0.9, 0.0, 0.4, 1.7, 3.0}) {
    const cplx got = first_order_apply(u, ut, x);
    CHECK(got.real() == Catch::Approx(1.0 / std::cosh(a * x)).epsilon(1e-12));
    CHECK(std::abs(got.imag()) < 1e-14);
  }
}

TEST_CASE("transformed plane wave solves the one-step equation") {
  // pins the sign convention in L = -u'/u + d/dx
  const double rates[] = {1.0};
  const DarbouxChain chain = DarbouxChain::from_rates(rates);
  const double residual =
      verify_intertwining(chain, plane_wave(cplx{1.0, 0.0}), UniformGrid{0.2, 1e-3, 2001});
  CHECK(residual < 1e-8);
}

TEST_CASE("first-order application reports poles of 1/u") {
  const ExpSum u = exp_sum_from_hyperbolic(HyperbolicKind::sinh, 1.0, 0.0);
  CHECK_THROWS_AS(first_order_apply(u, plane_wave(cplx{1.0, 0.0}), 0.0), pole_error);
}

TEST_CASE("transformed potentials reproduce the closed-form values") {
  CHECK(transformed_potential(DarbouxChain{}, 3.1) == 0.0);

  const double a1[] = {1.0};
  const DarbouxChain one = DarbouxChain::from_rates(a1);
  CHECK(transformed_potential(one, 0.0) == Catch::Approx(-2.0).epsilon(1e-13));
  for (double x : {0.5, 1.5, 4.0}) {
    const double sech = 1.0 / std::cosh(x);
    CHECK(transformed_potential(one, x) ==
          Catch::Approx(-2.0 * sech * sech).epsilon(1e-12));
  }

  const double a2[] = {1.0, 2.0};
  const DarbouxChain two = DarbouxChain::from_rates(a2);
  CHECK(transformed_potential(two, 0.0) == Catch::Approx(-6.0).epsilon(1e-13));

  // finite-difference cross-check of -2 (ln W)''
  const double h = 1e-4;
  for (double x : {0.7, 1.9}) {
    auto lw = [&](double t) { return std::log(two.full_wronskian()(t)); };
    const double fd = -2.0 * (lw(x + h) - 2.0 * lw(x) + lw(x - h)) / (h * h);
    CHECK(transformed_potential(two, x) == Catch::Approx(fd).margin(1e-6));
  }

  // intermediate potential of the prefix
  CHECK(transformed_potential(two.prefix(1), 0.0) == Catch::Approx(-2.0));
}

TEST_CASE("composed operator annihilates every chain function") {
  const double rates[] = {1.0, 2.0, 3.0};
  const DarbouxChain chain = DarbouxChain::from_rates(rates);
  for (std::size_t i = 1; i <= chain.order(); ++i) {
    const AnalyticSolution psi = hyperbolic_solution(chain.function(i));
    for (double x : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      const double scale = std::max(1.0, std::abs(chain.function(i).value(x)));
      CHECK(std::abs(crum_apply(chain, psi, x)) / scale < 1e-10);
    }
  }
}

TEST_CASE("one-step determinant equals the first-order operator") {
  const double rates[] = {1.3};
  const DarbouxChain chain = DarbouxChain::from_rates(rates);
  const AnalyticSolution psi = plane_wave(cplx{0.7, 0.0});
  for (double x : {0.0, 0.3, 1.1, 2.9}) {
    const cplx det = crum_apply(chain, psi, x);
    const cplx step = first_order_apply(chain.function(1), psi, x);
    CHECK(std::abs(det - step) < 1e-12 * std::abs(step));
  }
}

TEST_CASE("determinant and chain composition agree on random chains") {
  std::mt19937 rng(1122);
  std::uniform_real_distribution<double> gap(0.2, 0.9);
  std::uniform_real_distribution<double> xs(0.0, 5.0);
  std::uniform_real_distribution<double> ks(0.4, 3.0);
  for (int n = 1; n <= 5; ++n) {
    std::vector<double> a(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += gap(rng);
      a[static_cast<std::size_t>(i)] = acc;
    }
    const DarbouxChain chain = DarbouxChain::from_rates(a);
    const AnalyticSolution psi = plane_wave(cplx{ks(rng), 0.0});
    for (int rep = 0; rep < (n == 2 ? 100 : 25); ++rep) {
      const double x = xs(rng);
      const cplx det = crum_apply(chain, psi, x);
      const cplx iter = iterated_apply(chain, psi, x);
      REQUIRE(std::abs(det - iter) < 1e-9 * (1.0 + std::abs(det)));
    }
  }
}

TEST_CASE("operators demand enough derivatives") {
  const double rates[] = {1.0, 2.0, 3.0};
  const DarbouxChain chain = DarbouxChain::from_rates(rates);
  const AnalyticSolution crippled{
      cplx{1.0, 0.0},
      [](double, int) { return Jet{std::vector<Jet::value_type>{{1.0, 0.0}, {0.0, 0.0}}}; }};
  CHECK_THROWS_AS(crum_apply(chain, crippled, 1.0), contract_error);
  CHECK_THROWS_AS(iterated_apply(chain, crippled, 1.0), contract_error);
  CHECK_THROWS_AS(factorization_apply(chain, crippled, 1.0), contract_error);
}

TEST_CASE("transformed solutions keep their energy") {
  const UniformGrid grid{0.5, 1e-3, 2001};

  // empty chain: the identity
  CHECK(verify_intertwining(DarbouxChain{}, plane_wave(cplx{1.0, 0.0}), grid) < 1e-8);

  const double a1[] = {1.0};
  CHECK(verify_intertwining(DarbouxChain::from_rates(a1), regular_sine(1.0), grid) <
        1e-6);

  const double a2[] = {1.0, 2.0};
  CHECK(verify_intertwining(DarbouxChain::from_rates(a2), plane_wave(cplx{2.0, 0.0}),
                            grid) < 1e-6);

  const double a3[] = {0.8, 1.9, 2.6};
  const DarbouxChain chain3 = DarbouxChain::from_rates(a3);
  for (double e : {-2.25, 1.0, 6.25}) {
    const cplx k = e >= 0.0 ? cplx{std::sqrt(e), 0.0} : cplx{0.0, std::sqrt(-e)};
    CHECK(verify_intertwining(chain3, plane_wave(k), grid) < 1e-6);
  }
}

TEST_CASE("factorization identity on and off the kernel") {
  std::vector<double> xs;
  for (int j = 0; j <= 60; ++j) xs.push_back(3.0 * j / 60.0);

  const double a1[] = {1.0};
  const DarbouxChain one = DarbouxChain::from_rates(a1);
  // E = 1: multiplier E - C_1 = 2
  CHECK(one.factorization_polynomial(cplx{1.0, 0.0}) == cplx{2.0, 0.0});
  CHECK(verify_factorization(one, plane_wave(cplx{1.0, 0.0}), xs) < 1e-6);

  // on the kernel the multiplier vanishes and so must the image
  const AnalyticSolution u1 = hyperbolic_solution(one.function(1));
  for (double x : xs)
    CHECK(std::abs(factorization_apply(one, u1, x)) < 1e-10);

  const double a2[] = {1.0, 2.0};
  const DarbouxChain two = DarbouxChain::from_rates(a2);
  CHECK(two.factorization_polynomial(cplx{4.0, 0.0}) == cplx{40.0, 0.0});
  CHECK(verify_factorization(two, plane_wave(cplx{2.0, 0.0}), xs) < 1e-5);

  // imaginary wavenumber (bound-state range)
  CHECK(verify_factorization(two, plane_wave(cplx{0.0, 0.5}), xs) < 1e-5);

  const double a3[] = {1.0, 2.0, 3.0};
  const DarbouxChain three = DarbouxChain::from_rates(a3);
  CHECK(verify_factorization(three, plane_wave(cplx{0.0, 1.5}), xs) < 1e-5);
  CHECK(verify_factorization(three, plane_wave(cplx{3.0, 0.0}), xs) < 1e-5);
}

TEST_CASE("second solutions have unit Wronskian against the first") {
  const double rates[] = {1.0, 2.0};
  const DarbouxChain chain = DarbouxChain::from_rates(rates);
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> xs(0.5, 6.0);

  for (int i = 1; i <= 2; ++i) {
    const ExpSum minor = wronskian_minor(chain.functions(), i);
    const ExpSum minor_d = minor.derivative();
    const ExpSum& w = chain.full_wronskian();
    const ExpSum w_d = w.derivative();
    auto vt = [&](double x) { return minor(x) / w(x); };
    auto vt_prime = [&](double x) {
      return (minor_d(x) * w(x) - minor(x) * w_d(x)) / (w(x) * w(x));
    };
    for (int rep = 0; rep < 20; ++rep) {
      const double x = xs(rng);
      const double v = second_solution(chain, i, x);
      const double h = 1e-3;
      const double vp = (second_solution(chain, i, x - 2.0 * h) -
                         8.0 * second_solution(chain, i, x - h) +
                         8.0 * second_solution(chain, i, x + h) -
                         second_solution(chain, i, x + 2.0 * h)) /
                        (12.0 * h);
      const double wronskian = v * vt_prime(x) - vp * vt(x);
      REQUIRE(wronskian == Catch::Approx(1.0).margin(1e-6));
    }
  }
}

TEST_CASE("second solutions satisfy the transformed equation") {
  const double rates[] = {1.0, 2.0};
  const DarbouxChain chain = DarbouxChain::from_rates(rates);
  const double h = 1e-3;
  for (int i = 1; i <= 2; ++i) {
    const double energy = chain.function(static_cast<std::size_t>(i)).eigenvalue();
    for (double x : {1.0, 2.5, 4.0}) {
      double v[5];
      for (int s = -2; s <= 2; ++s)
        v[s + 2] = second_solution(chain, i, x + s * h);
      const double second =
          (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);
      const double residual =
          -second + transformed_potential(chain, x) * v[2] - energy * v[2];
      CHECK(std::abs(residual) < 1e-6 * std::max(1.0, std::abs(v[2])));
    }
  }
}

TEST_CASE("second solution rejects paths across a node") {
  // four steps: the excited bound state (index 1) has an interior node
  const double rates[] = {1.0, 2.0, 3.0, 4.0};
  const DarbouxChain chain = DarbouxChain::from_rates(rates);
  const ExpSum minor = wronskian_minor(chain.functions(), 1);
  // locate the node on (0, 8)
  double node = -1.0;
  double prev = minor(0.05);
  for (int j = 1; j <= 800; ++j) {
    const double x = 0.05 + 8.0 * j / 800.0;
    const double cur = minor(x);
    if (prev * cur < 0.0) {
      node = x;
      break;
    }
    prev = cur;
  }
  REQUIRE(node > 0.0);
  // the base point sits on one side of the node, so one of these crosses it
  bool threw = false;
  for (double target : {0.25 * node, node + 3.0}) {
    try {
      second_solution(chain, 1, target);
    } catch (const integration_path_error&) {
      threw = true;
    }
  }
  CHECK(threw);
}

TEST_CASE("shift parameters deform the potential but not the full-line levels") {
  const double rates[] = {1.0, 2.0};
  const double shifts[] = {0.4, -0.2};
  const DarbouxChain base = DarbouxChain::from_rates(rates);
  const DarbouxChain moved = DarbouxChain::from_rates(rates, shifts);

  double dv = 0.0;
  for (int j = 0; j <= 200; ++j) {
    const double x = 10.0 * j / 200.0;
    dv = std::max(dv, std::abs(transformed_potential(base, x) -
                               transformed_potential(moved, x)));
  }
  CHECK(dv > 1e-2);

  auto full_line_levels = [](const DarbouxChain& chain) {
    return oracle::eigen_semiaxis(
               [&](double x) { return transformed_potential(chain, x - 40.0); },
               80.0, 8000)
        .eigenvalues;
  };
  const auto lb = full_line_levels(base);
  const auto lm = full_line_levels(moved);
  REQUIRE(lb.size() == 2);
  REQUIRE(lm.size() == 2);
  for (std::size_t i = 0; i < lb.size(); ++i)
    CHECK(lb[i] == Catch::Approx(lm[i]).margin(1e-4));
}
