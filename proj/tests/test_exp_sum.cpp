#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "darboux/exp_sum.hpp"
#include "darboux/transformation.hpp"

using namespace darboux;

namespace {

// library-free Taylor evaluation of cosh, the oracle for the hyperbolic
// encodings
double cosh_series(double t) {
  double sum = 1.0, term = 1.0;
  for (int n = 1; n < 30; ++n) {
    term *= t * t / ((2 * n - 1) * (2 * n));
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("hyperbolic encodings have two terms and the right values") {
  const ExpSum c = exp_sum_from_hyperbolic(HyperbolicKind::cosh, 1.0, 0.0);
  REQUIRE(c.size() == 2);
  CHECK(c.terms()[0].rate == -1.0);
  CHECK(c.terms()[1].rate == 1.0);
  CHECK(c(0.0) == Catch::Approx(1.0).margin(1e-15));  // cosh 0 = 1

  const ExpSum s = exp_sum_from_hyperbolic(HyperbolicKind::sinh, 2.0, 0.0);
  REQUIRE(s.size() == 2);
  CHECK(s.terms()[0].rate == -2.0);
  CHECK(s.terms()[1].rate == 2.0);
  CHECK(s(0.0) == Catch::Approx(0.0).margin(1e-15));  // sinh 0 = 0

  const ExpSum shifted = exp_sum_from_hyperbolic(HyperbolicKind::cosh, 1.0, 0.5);
  CHECK(shifted(0.0) == Catch::Approx(cosh_series(0.5)).epsilon(1e-12));

  for (double x : {-3.0, -0.7, 0.3, 2.5}) {
    CHECK(c(x) == Catch::Approx(std::cosh(x)).epsilon(1e-14));
    CHECK(s(x) == Catch::Approx(std::sinh(2.0 * x)).epsilon(1e-14));
    CHECK(shifted(x) == Catch::Approx(std::cosh(x + 0.5)).epsilon(1e-14));
  }
}

TEST_CASE("hyperbolic encoding rejects nonpositive slopes") {
  CHECK_THROWS_AS(exp_sum_from_hyperbolic(HyperbolicKind::cosh, 0.0, 0.0),
                  invalid_parameter_error);
  CHECK_THROWS_AS(exp_sum_from_hyperbolic(HyperbolicKind::sinh, -1.0, 0.0),
                  invalid_parameter_error);
  CHECK_THROWS_AS(cosh_function(-2.0, 0.0), invalid_parameter_error);
  // shifts beyond the exponent range cannot be folded into coefficients
  CHECK_THROWS_AS(exp_sum_from_hyperbolic(HyperbolicKind::cosh, 1.0, 800.0),
                  invalid_parameter_error);
}

TEST_CASE("derivative maps cosh sums to sinh sums term-wise") {
  const ExpSum c = exp_sum_from_hyperbolic(HyperbolicKind::cosh, 1.0, 0.0);
  const ExpSum s = exp_sum_from_hyperbolic(HyperbolicKind::sinh, 1.0, 0.0);
  const ExpSum dc = c.derivative();
  REQUIRE(dc.size() == s.size());
  for (std::size_t i = 0; i < dc.size(); ++i) {
    CHECK(dc.terms()[i].rate == s.terms()[i].rate);
    CHECK(dc.terms()[i].coeff == s.terms()[i].coeff);
  }
}

TEST_CASE("derivative of order zero is the identity") {
  const ExpSum s = exp_sum_from_hyperbolic(HyperbolicKind::sinh, 1.5, 0.25);
  const ExpSum same = s.derivative(0);
  REQUIRE(same.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(same.terms()[i].coeff == s.terms()[i].coeff);
    CHECK(same.terms()[i].rate == s.terms()[i].rate);
  }
}

TEST_CASE("second derivative agrees with central differences") {
  const ExpSum s = exp_sum_from_hyperbolic(HyperbolicKind::sinh, 2.0, 0.0);
  const ExpSum s2 = s.derivative(2);
  const double h = 1e-5;
  for (double x : {-1.0, 0.0, 0.4, 1.3}) {
    const double fd = (s(x + h) - 2.0 * s(x) + s(x - h)) / (h * h);
    CHECK(s2(x) == Catch::Approx(fd).margin(1e-8 * std::max(1.0, std::abs(fd))));
  }
  // 4 sinh(2x) expected: coefficients scale by rate^2
  CHECK(s2(0.7) == Catch::Approx(4.0 * std::sinh(1.4)).epsilon(1e-14));
}

TEST_CASE("iterated first derivatives equal the higher-order derivative exactly") {
  const ExpSum w = exp_sum_from_hyperbolic(HyperbolicKind::cosh, 1.0, 0.3) *
                   exp_sum_from_hyperbolic(HyperbolicKind::sinh, 2.5, -0.4);
  const ExpSum twice = w.derivative(1).derivative(1);
  const ExpSum second = w.derivative(2);
  REQUIRE(twice.size() == second.size());
  for (std::size_t i = 0; i < twice.size(); ++i) {
    CHECK(twice.terms()[i].coeff == second.terms()[i].coeff);
    CHECK(twice.terms()[i].rate == second.terms()[i].rate);
  }
}

TEST_CASE("products bound the term count and keep rates strictly increasing") {
  const ExpSum a = exp_sum_from_hyperbolic(HyperbolicKind::cosh, 1.0, 0.1);
  const ExpSum b = exp_sum_from_hyperbolic(HyperbolicKind::sinh, 2.0, -0.2);
  const ExpSum p = a * b;
  CHECK(p.size() <= a.size() * b.size());
  for (std::size_t i = 1; i < p.size(); ++i)
    CHECK(p.terms()[i - 1].rate < p.terms()[i].rate);
  for (double x : {-2.0, 0.0, 1.1})
    CHECK(p(x) == Catch::Approx(std::cosh(x + 0.1) * std::sinh(2.0 * x - 0.2))
                      .epsilon(1e-13));
}

TEST_CASE("terms with colliding rates merge and zero terms drop") {
  const ExpSum a = exp_sum_from_hyperbolic(HyperbolicKind::cosh, 1.0, 0.0);
  // cosh^2 - sinh^2 = 1: rates +-2 cancel exactly, rate 0 remains
  const ExpSum b = exp_sum_from_hyperbolic(HyperbolicKind::sinh, 1.0, 0.0);
  const ExpSum one = a * a - b * b;
  REQUIRE(one.size() == 1);
  CHECK(one.terms()[0].rate == 0.0);
  CHECK(one.terms()[0].coeff == Catch::Approx(1.0).epsilon(1e-15));

  const ExpSum sum = ExpSum::single(1.0, 1.0) + ExpSum::single(2.0, 1.0 + 1e-15);
  REQUIRE(sum.size() == 1);
  CHECK(sum.terms()[0].coeff == Catch::Approx(3.0));
}

TEST_CASE("log second derivative reproduces known values") {
  const ExpSum c = exp_sum_from_hyperbolic(HyperbolicKind::cosh, 1.0, 0.0);
  CHECK(log_second_derivative(c, 0.0) == Catch::Approx(1.0).epsilon(1e-14));

  const ExpSum e = ExpSum::single(1.0, 1.0);
  for (double x : {-4.0, 0.0, 7.0})
    CHECK(log_second_derivative(e, x) == Catch::Approx(0.0).margin(1e-14));

  // s = (cosh 3x + 3 cosh x)/2: s(0)=2, s'(0)=0, s''(0)=6 -> value 3
  const ExpSum s = 0.5 * (exp_sum_from_hyperbolic(HyperbolicKind::cosh, 3.0, 0.0) +
                          3.0 * exp_sum_from_hyperbolic(HyperbolicKind::cosh, 1.0, 0.0));
  CHECK(log_second_derivative(s, 0.0) == Catch::Approx(3.0).epsilon(1e-13));

  // finite-difference oracle for the same quantity away from the origin
  const double h = 1e-4;
  for (double x : {0.3, 1.1, 2.7}) {
    const double fd =
        (std::log(s(x + h)) - 2.0 * std::log(s(x)) + std::log(s(x - h))) / (h * h);
    CHECK(log_second_derivative(s, x) == Catch::Approx(fd).margin(1e-6));
  }
}

TEST_CASE("log second derivative signals poles") {
  const ExpSum s = exp_sum_from_hyperbolic(HyperbolicKind::sinh, 1.0, 0.0);
  CHECK_THROWS_AS(log_second_derivative(s, 0.0), pole_error);
}

TEST_CASE("scaled evaluation survives arguments far beyond double overflow") {
  const ExpSum s = 0.5 * (exp_sum_from_hyperbolic(HyperbolicKind::cosh, 9.0, 0.0) +
                          3.0 * exp_sum_from_hyperbolic(HyperbolicKind::cosh, 5.0, 0.0));
  const ScaledValue v = s.eval_scaled(200.0);
  CHECK(std::isfinite(v.mantissa));
  CHECK(v.log_scale == Catch::Approx(1800.0));
  // the log-derivative of a dominated sum approaches the top rate
  double d[2];
  double scale = 0.0;
  s.eval_derivatives_scaled(200.0, d, scale);
  CHECK(d[1] / d[0] == Catch::Approx(9.0).epsilon(1e-12));
  // and the second log-derivative flattens out
  CHECK(log_second_derivative(s, 200.0) == Catch::Approx(0.0).margin(1e-12));
}
