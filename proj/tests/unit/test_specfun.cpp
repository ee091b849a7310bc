#include <doctest.h>

#include <cmath>
#include <limits>

#include <boost/math/special_functions/bessel.hpp>

#include "hypkern/errors.hpp"
#include "hypkern/specfun.hpp"
#include "oracles.hpp"

using namespace hypkern;
using namespace hypkern::specfun;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// 200 points geometric on [1e-4, 30]
std::vector<double> log_points(int count = 200) {
  std::vector<double> zs;
  for (int i = 0; i < count; ++i) zs.push_back(1e-4 * std::pow(30.0 / 1e-4, i / double(count - 1)));
  return zs;
}

}  // namespace

TEST_CASE("K0 and K1 match the cosh integral") {
  for (double z : log_points()) {
    CHECK(rel(bessel_k(0, z), oracle::bessel_k(0, z)) < 1e-12);
    CHECK(rel(bessel_k(1, z), oracle::bessel_k(1, z)) < 1e-12);
  }
}

TEST_CASE("J and Y match their integral forms") {
  for (double z : log_points()) {
    for (int n : {0, 1}) {
      const double j = oracle::bessel_j(n, z);
      // relative error is meaningless at the zeros, so bound against the envelope too
      CHECK(std::abs(bessel_j(n, z) - j) < 1e-12 * std::max(std::abs(j), 1e-2));
      const double y = oracle::bessel_y(n, z);
      CHECK(std::abs(bessel_y(n, z) - y) < 1e-12 * std::max(std::abs(y), 1e-2));
    }
  }
}

TEST_CASE("I0 and I1 match the cosine integral") {
  for (double z : log_points()) {
    CHECK(rel(bessel_i(0, z), oracle::bessel_i(0, z)) < 1e-11);
    CHECK(rel(bessel_i(1, z), oracle::bessel_i(1, z)) < 1e-11);
  }
}

TEST_CASE("agrees with Boost.Math across the crossovers") {
  for (double z : {1.999, 2.0, 2.001, 24.99, 25.0, 25.01, 49.9, 50.0, 50.1, 200.0}) {
    CHECK(rel(bessel_k(0, z), boost::math::cyl_bessel_k(0, z)) < 1e-13);
    CHECK(rel(bessel_k(1, z), boost::math::cyl_bessel_k(1, z)) < 1e-13);
    CHECK(std::abs(bessel_j(0, z) - boost::math::cyl_bessel_j(0, z)) < 1e-13);
    CHECK(std::abs(bessel_y(1, z) - boost::math::cyl_neumann(1, z)) < 1e-13);
    CHECK(rel(bessel_i(1, z), boost::math::cyl_bessel_i(1, z)) < 1e-13);
  }
}

TEST_CASE("Wronskians") {
  for (double z : log_points()) {
    CHECK(std::abs(z * (bessel_i(0, z) * bessel_k(1, z) + bessel_i(1, z) * bessel_k(0, z)) - 1.0) < 1e-12);
    CHECK(std::abs(std::numbers::pi * z / 2 *
                       (bessel_j(1, z) * bessel_y(0, z) - bessel_j(0, z) * bessel_y(1, z)) -
                   1.0) < 1e-12);
  }
}

TEST_CASE("K1 rotation onto the Hankel function") {
  // K1(-i w) = -(pi/2) H1_1(w) for w > 0
  for (double w : {1e-3, 0.1, 0.5, 1.0, 3.0, 10.0, 24.0, 26.0}) {
    const auto k = oracle::bessel_k1_complex({0.0, -w});
    const auto h = -std::numbers::pi / 2 * hankel1(1, w);
    CHECK(std::abs(k - h) / std::abs(k) < 1e-12);
  }
}

TEST_CASE("small-argument behaviour") {
  CHECK(rel(bessel_k(1, 1e-8), 1e8) < 1e-12);
  CHECK(rel(bessel_k(0, 1e-8), -std::log(0.5e-8) - kEulerGamma) < 1e-12);
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(1, 0.0) == 0.0);
  CHECK(bessel_i(0, 0.0) == 1.0);
}

TEST_CASE("gamma values") {
  CHECK(rel(gamma_fn(0.5), std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(rel(gamma_fn(5.0), 24.0) < 1e-14);
  CHECK(rel(gamma_fn(2.5), 0.75 * std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
}

TEST_CASE("domain and overflow errors") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(bessel_k(0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_k(1, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_k(2, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(0, -0.1), DomainError);
  CHECK_THROWS_AS(bessel_j(0, nan), DomainError);
  CHECK_THROWS_AS(bessel_y(0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_i(0, inf), DomainError);
  CHECK_THROWS_AS(bessel_i(0, 800.0), OverflowError);
  CHECK_THROWS_AS(hankel1(1, 0.0), DomainError);
  CHECK(bessel_k(0, 800.0) >= 0.0);
}
