#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hypkern/errors.hpp"
#include "hypkern/quad.hpp"
#include "oracles.hpp"

using namespace hypkern;
using namespace hypkern::quad;

constexpr double kPi = std::numbers::pi;

TEST_CASE("single panel integrates polynomials exactly") {
  // the 21-point Kronrod rule is exact through degree 31
  for (int deg = 0; deg <= 20; ++deg) {
    const auto r = integrate_finite([deg](double s) { return std::pow(s, deg); }, 0.0, 2.0);
    const double want = std::pow(2.0, deg + 1) / (deg + 1);
    CHECK(r.converged);
    CHECK(std::abs(r.value - want) <= 1e-14 * want);
    CHECK(r.evaluations == kKronrodPoints);
  }
}

TEST_CASE("integral is linear in the integrand") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = u(gen), beta = u(gen), w = 1.0 + std::abs(u(gen));
    auto f = [w](double s) { return std::sin(w * s) * std::exp(-s); };
    auto g = [](double s) { return 1.0 / (1.0 + s * s); };
    const double lhs =
        integrate_finite([&](double s) { return alpha * f(s) + beta * g(s); }, 0.0, 3.0).value;
    const double rhs = alpha * integrate_finite(f, 0.0, 3.0).value + beta * integrate_finite(g, 0.0, 3.0).value;
    CHECK(std::abs(lhs - rhs) < 1e-13);
  }
}

TEST_CASE("reported error bounds the true error") {
  struct Case {
    Integrand f;
    double a, b, exact;
  };
  const std::vector<Case> corpus = {
      {[](double s) { return std::exp(s); }, 0, 1, std::exp(1.0) - 1},
      {[](double s) { return std::sqrt(s); }, 0, 1, 2.0 / 3},
      {[](double s) { return 1 / std::sqrt(s); }, 0, 1, 2.0},
      {[](double s) { return std::log(s); }, 0, 1, -1.0},
      {[](double s) { return 1 / (1 + s * s); }, -10, 10, 2 * std::atan(10.0)},
      {[](double s) { return std::sin(s); }, 0, kPi, 2.0},
      {[](double s) { return std::sin(50 * s); }, 0, 1, (1 - std::cos(50.0)) / 50},
      {[](double s) { return std::cos(100 * s) * s; }, 0, 1, std::sin(100.0) / 100 + (std::cos(100.0) - 1) / 1e4},
      {[](double s) { return std::abs(s - 0.3); }, 0, 1, 0.045 + 0.245},
      {[](double s) { return s < 0.5 ? 1.0 : 0.0; }, 0, 1, 0.5},
      {[](double s) { return std::exp(-s * s); }, -6, 6, std::sqrt(kPi) * std::erf(6.0)},
      {[](double s) { return 1 / (1e-4 + (s - 0.5) * (s - 0.5)); }, 0, 1, 2 / 1e-2 * std::atan(0.5 / 1e-2)},
      {[](double s) { return std::pow(s, 0.25); }, 0, 1, 0.8},
      {[](double s) { return std::pow(s, -0.75); }, 0, 1, 4.0},
      {[](double s) { return s * std::log(s); }, 0, 1, -0.25},
      {[](double s) { return std::exp(-10 * s); }, 0, 5, (1 - std::exp(-50.0)) / 10},
      {[](double s) { return std::cosh(s); }, -2, 2, 2 * std::sinh(2.0)},
      {[](double s) { return 1 / (s + 1); }, 0, 1e3, std::log(1001.0)},
      {[](double s) { return std::sqrt(1 - s * s); }, -1, 1, kPi / 2},
      {[](double s) { return std::sin(s) / s; }, 1e-12, 20, 0.0},  // filled below from Boost
  };
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& c = corpus[i];
    double exact = c.exact;
    if (i + 1 == corpus.size()) {
      boost::math::quadrature::tanh_sinh<double> ts;
      exact = ts.integrate(c.f, c.a, c.b, 1e-15);
    }
    const auto r = integrate_finite(c.f, c.a, c.b);
    INFO("case " << i);
    CHECK(r.converged);
    CHECK(std::abs(r.value - exact) <= std::max(r.error_estimate, 1e-15 * std::abs(exact)));
  }
}

TEST_CASE("semi-infinite ranges") {
  SUBCASE("gaussian") {
    const auto r = integrate_semi_infinite([](double s) { return std::exp(-s * s / 2); }, 0.0,
                                           GaussianLike{1.0, 1.0});
    CHECK(std::abs(r.value - std::sqrt(kPi / 2)) < 1e-13);
  }
  SUBCASE("exponential") {
    const auto r = integrate_semi_infinite([](double s) { return s * std::exp(-3 * s); }, 1.0,
                                           ExponentialLike{3.0, 2.0});
    CHECK(std::abs(r.value - 4.0 / 9 * std::exp(-3.0)) < 1e-14);
  }
  SUBCASE("algebraic") {
    const auto r = integrate_semi_infinite([](double s) { return 1 / (1 + s * s); }, 0.0,
                                           AlgebraicLike{2.0});
    CHECK(std::abs(r.value - kPi / 2) < 1e-12);
  }
  SUBCASE("inverse square root at the start") {
    // int_1^inf e^{-s} / sqrt(s - 1) ds = sqrt(pi) / e
    const auto r = integrate_semi_infinite([](double s) { return std::exp(-s) / std::sqrt(s - 1); },
                                           1.0, ExponentialLike{1.0, 1.0}, {}, {true});
    CHECK(std::abs(r.value - std::sqrt(kPi) / std::exp(1.0)) < 1e-12);
  }
  SUBCASE("truncation point grows as the tolerance shrinks") {
    CHECK(truncation_point(0.0, GaussianLike{1.0, 1.0}, 1e-16) >
          truncation_point(0.0, GaussianLike{1.0, 1.0}, 1e-8));
  }
}

TEST_CASE("descent integral closed form") {
  // g = e^{-c cosh rho} gives sqrt(2) e^{-c cosh r} sqrt(pi / c)
  for (double c : {0.5, 1.0, 3.0}) {
    for (double r : {0.0, 0.3, 1.0, 2.5}) {
      const auto res = integrate_descent([c](double rho) { return std::exp(-c * std::cosh(rho)); }, r);
      const double want = std::sqrt(2.0) * std::exp(-c * std::cosh(r)) * std::sqrt(kPi / c);
      CHECK(res.converged);
      CHECK(std::abs(res.value - want) < 1e-10 * want);
    }
  }
}

TEST_CASE("descent agrees with an independent quadrature") {
  auto g = [](double rho) { return std::exp(-rho * rho); };
  const double r = 0.7;
  boost::math::quadrature::exp_sinh<double> es;
  // rho = r + v^2 again, but through Boost's own rule
  const double want = es.integrate(
      [&](double v) {
        const double rho = r + v * v;
        if (rho > 50.0) return 0.0;
        // v / sqrt(sinh(v^2 / 2)) -> sqrt(2) as v -> 0
        const double w = v < 1e-6 ? std::sqrt(2.0) : v / std::sqrt(std::sinh(v * v / 2));
        return 2 * w * g(rho) * std::sinh(rho) / std::sqrt(std::sinh((rho + r) / 2));
      },
      0.0, std::numeric_limits<double>::infinity(), 1e-14);
  CHECK(std::abs(integrate_descent(g, r).value - want) < 1e-10 * want);
}

TEST_CASE("failures are reported, not hidden") {
  QuadratureConfig tight{1e-15, 1e-300, 3};
  const auto r = integrate_finite([](double s) { return 1 / std::sqrt(s); }, 0.0, 1.0, tight);
  CHECK_FALSE(r.converged);
  CHECK_THROWS_AS(require_converged(r, "test"), QuadratureError);

  const auto bad = integrate_finite([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0, 1);
  CHECK_FALSE(bad.converged);

  CHECK_THROWS_AS(integrate_finite([](double s) { return s; }, 0, 1, QuadratureConfig{0.0, 1e-14, 10}),
                  DomainError);
  CHECK_THROWS_AS(integrate_finite([](double s) { return s; }, 0, 1, QuadratureConfig{1e-10, 1e-14, 0}),
                  DomainError);
}
