#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "hypkern/bessel_kernels.hpp"
#include "hypkern/errors.hpp"
#include "hypkern/verify.hpp"
#include "oracles.hpp"

using namespace hypkern;
using namespace hypkern::bessel;

constexpr double kPi = std::numbers::pi;

namespace {

double z_of(double y, double x, double xp) { return std::sqrt(x * x + xp * xp - 2 * x * xp * std::cos(y)); }

double p(double a, double y, double x, double xp) {
  return poisson_kernel_bessel(BesselFrequency(a), PoissonTime(y), HalfLineCoord(x), HalfLineCoord(xp));
}

double heat(double a, double t, double x, double xp, double tol = kHeatKernelRelTol) {
  return heat_kernel_bessel(BesselFrequency(a), HeatTime(t), HalfLineCoord(x), HalfLineCoord(xp), tol).value;
}

}  // namespace

TEST_CASE("Poisson kernel against the K1 integral") {
  for (double a : {0.3, 1.0, -2.0, 7.0}) {
    for (double y : {0.2, 1.0, 2.9}) {
      for (auto [x, xp] : {std::pair{0.5, 1.5}, {1.0, 1.0}, {3.0, 0.2}}) {
        const double z = z_of(y, x, xp), m = std::abs(a);
        const double want = m / kPi * x * xp * std::sin(y) * oracle::bessel_k(1, m * z) / z;
        CHECK(std::abs(p(a, y, x, xp) - want) < 1e-12 * want);
      }
    }
  }
}

TEST_CASE("Poisson kernel is symmetric and even in a") {
  for (double y : {0.4, 1.7}) {
    CHECK(p(1.3, y, 0.4, 2.2) == doctest::Approx(p(1.3, y, 2.2, 0.4)).epsilon(1e-15));
    CHECK(p(1.3, y, 0.4, 2.2) == p(-1.3, y, 0.4, 2.2));
  }
}

TEST_CASE("Morse form is the log substitution") {
  for (double X : {-1.0, 0.0, 0.8}) {
    for (double Xp : {-0.3, 1.1}) {
      const double m = poisson_kernel_morse(BesselFrequency(0.9), PoissonTime(1.2), LogCoord(X), LogCoord(Xp));
      CHECK(m == doctest::Approx(p(0.9, 1.2, std::exp(X), std::exp(Xp))).epsilon(1e-14));
      const double hm = heat_kernel_morse(BesselFrequency(0.9), HeatTime(0.7), LogCoord(X), LogCoord(Xp)).value;
      CHECK(std::abs(hm - heat(0.9, 0.7, std::exp(X), std::exp(Xp))) < 1e-8 * std::abs(hm));
    }
  }
}

TEST_CASE("imaginary frequency kernel is the rotated K1 kernel") {
  // q_b = (b / pi) x x' sin y K1(-i b z) / z
  for (double b : {0.5, 2.0, 6.0}) {
    for (double y : {0.3, 2.0}) {
      const double x = 0.8, xp = 1.9, z = z_of(y, x, xp);
      const auto want = b / kPi * x * xp * std::sin(y) * oracle::bessel_k1_complex({0.0, -b * z}) / z;
      const auto got = poisson_kernel_hankel(b, PoissonTime(y), HalfLineCoord(x), HalfLineCoord(xp));
      CHECK(std::abs(got - want) < 1e-11 * std::abs(want));
    }
  }
}

TEST_CASE("small frequency limits") {
  // Poisson: |a| K1(|a| z) / z -> 1 / z^2, the kernel of H^1 in rho = |ln x - ln x'|
  for (double y : {0.3, 1.5, 2.8}) {
    const double x = 0.7, xp = 1.6, rho = std::abs(std::log(x / xp));
    const double p1 = std::sin(y) / (kPi * (2 * std::cosh(rho) - 2 * std::cos(y)));
    CHECK(std::abs(p(1e-7, y, x, xp) - p1) < 1e-6 * p1);
  }
  // heat: J0 -> 1 leaves the Gaussian in X
  for (double t : {0.1, 1.0, 4.0}) {
    const double x = 0.7, xp = 1.6, s0 = std::log(xp / x);
    const double g = std::exp(-s0 * s0 / (4 * t)) / std::sqrt(4 * kPi * t);
    CHECK(std::abs(heat(1e-6, t, x, xp) - g) < 1e-8 * g);
  }
}

TEST_CASE("heat kernel against Boost quadrature") {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  for (double a : {0.5, 2.0}) {
    for (double t : {0.3, 1.5}) {
      const double x = 0.9, xp = 1.4, s0 = std::log(xp / x);
      // the Gaussian is below e^{-400} past s0 + 40 sqrt(t)
      const double integral = GK::integrate(
          [&](double s) {
            const double b2 = 2 * x * xp * std::cosh(s) - x * x - xp * xp;
            return s * std::exp(-s * s / (4 * t)) * boost::math::cyl_bessel_j(0, a * std::sqrt(std::max(b2, 0.0)));
          },
          s0, s0 + 40 * std::sqrt(t), 20, 1e-14);
      const double want = integral / (4 * std::sqrt(kPi) * std::pow(t, 1.5));
      const auto got = heat_kernel_bessel(BesselFrequency(a), HeatTime(t), HalfLineCoord(x), HalfLineCoord(xp));
      CHECK(std::abs(got.value - want) < 1e-9 * std::abs(want));
      CHECK(got.error >= 0.0);
    }
  }
}

TEST_CASE("heat kernel is symmetric") {
  CHECK(std::abs(heat(1.5, 0.5, 0.6, 1.7) - heat(1.5, 0.5, 1.7, 0.6)) < 1e-12);
}

TEST_CASE("apply operations") {
  const auto u0 = verify::log_bump(0.5, 2.0, 61);
  const std::vector<double> out = {0.6, 1.0, 1.5};
  const auto zero = SampledFunction(u0.nodes(), std::vector<double>(u0.nodes().size(), 0.0));

  SUBCASE("zero data") {
    const auto p = poisson_apply_bessel(BesselFrequency(1.0), PoissonTime(0.5), zero, out);
    for (double v : p.solution.values()) CHECK(v == 0.0);
    const auto h = heat_apply_bessel(BesselFrequency(1.0), HeatTime(0.5), zero, out);
    for (double v : h.solution.values()) CHECK(v == 0.0);
  }
  SUBCASE("linearity") {
    const auto one = poisson_apply_bessel(BesselFrequency(1.0), PoissonTime(0.5), u0, out);
    const auto three = poisson_apply_bessel(BesselFrequency(1.0), PoissonTime(0.5), u0.scaled(3.0), out);
    for (std::size_t i = 0; i < out.size(); ++i)
      CHECK(three.solution.values()[i] == doctest::Approx(3.0 * one.solution.values()[i]).epsilon(1e-7));
    const auto h1 = heat_apply_bessel(BesselFrequency(1.0), HeatTime(0.2), u0, out);
    const auto h3 = heat_apply_bessel(BesselFrequency(1.0), HeatTime(0.2), u0.scaled(-3.0), out);
    for (std::size_t i = 0; i < out.size(); ++i)
      CHECK(h3.solution.values()[i] == doctest::Approx(-3.0 * h1.solution.values()[i]).epsilon(1e-7));
  }
  SUBCASE("positive data gives a positive solution below the data maximum") {
    const auto r = poisson_apply_bessel(BesselFrequency(2.0), PoissonTime(0.3), u0, out);
    for (double v : r.solution.values()) {
      CHECK(v > 0.0);
      CHECK(v < 1.0);
    }
    CHECK(r.error_estimates.size() == out.size());
  }
}

TEST_CASE("domain errors") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(BesselFrequency(0.0), DomainError);
  CHECK_THROWS_AS((void)BesselFrequency(nan), DomainError);
  CHECK_THROWS_AS(PoissonTime(0.0), DomainError);
  CHECK_THROWS_AS((void)PoissonTime(kPi), DomainError);
  CHECK_THROWS_AS(HeatTime(0.0), DomainError);
  CHECK_THROWS_AS(HeatTime(10.5), DomainError);
  CHECK_THROWS_AS(HalfLineCoord(0.0), DomainError);
  CHECK_THROWS_AS(LogCoord(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(heat(21.0, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(poisson_kernel_hankel(0.0, PoissonTime(1.0), HalfLineCoord(1.0), HalfLineCoord(2.0)), DomainError);
  const SampledFunction straddles({-1.0, 1.0}, {1.0, 1.0});
  CHECK_THROWS_AS(poisson_apply_bessel(BesselFrequency(1.0), PoissonTime(1.0), straddles, std::vector<double>{1.0}), DomainError);
  const SampledFunction fine({0.5, 1.0}, {1.0, 1.0});
  CHECK_THROWS_AS(heat_apply_bessel(BesselFrequency(1.0), HeatTime(1.0), fine, std::vector<double>{-1.0}), DomainError);
}
