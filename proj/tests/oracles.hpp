#pragma once

// Reference values computed independently of the library: integral
// representations evaluated by trapezoid sums or Boost.Math quadrature, and a
// 50-digit complex series for K_1.

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

// K_nu(z) = int_0^inf e^{-z cosh s} cosh(nu s) ds; the trapezoid rule is
// spectrally accurate for this even, entire integrand.
inline double bessel_k(int nu, double z) {
  const double h = 0.01;
  double sum = 0.5 * std::exp(-z);
  for (int k = 1;; ++k) {
    const double s = k * h;
    const double term = std::exp(-z * std::cosh(s)) * std::cosh(nu * s);
    sum += term;
    if (term < 1e-20 * sum && z * std::cosh(s) > 50.0) break;
  }
  return h * sum;
}

// J_n(z) = (1/pi) int_0^pi cos(z sin th - n th) dth (periodic trapezoid).
inline double bessel_j(int n, double z) {
  const int m = 512;
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    const double th = 2.0 * kPi * k / m;
    sum += std::cos(z * std::sin(th) - n * th);
  }
  return sum / m;
}

// I_n(z) = (1/pi) int_0^pi e^{z cos th} cos(n th) dth.
inline double bessel_i(int n, double z) {
  const int m = 512;
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    const double th = 2.0 * kPi * k / m;
    sum += std::exp(z * std::cos(th)) * std::cos(n * th);
  }
  return sum / m;
}

// Y_n(z) = (1/pi) int_0^pi sin(z sin th - n th) dth
//          - (1/pi) int_0^inf (e^{n t} + (-1)^n e^{-n t}) e^{-z sinh t} dt.
inline double bessel_y(int n, double z) {
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const double first =
      ts.integrate([&](double th) { return std::sin(z * std::sin(th) - n * th); }, 0.0, kPi, 1e-15) /
      kPi;
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  const double second = es.integrate(
      [&](double t) {
        const double e = std::exp(-z * std::sinh(t));
        return e == 0.0 ? 0.0 : (std::exp(n * t) + sign * std::exp(-n * t)) * e;
      },
      0.0, std::numeric_limits<double>::infinity(), 1e-15);
  return first - second / kPi;
}

// K_1(w) for complex w from its ascending series in 50-digit arithmetic:
// K_1(w) = 1/w + ln(w/2) I_1(w) - (w/4) sum_k (psi(k+1) + psi(k+2)) (w^2/4)^k / (k! (k+1)!).
inline std::complex<double> bessel_k1_complex(std::complex<double> w) {
  using C = boost::multiprecision::cpp_complex_50;
  using R = boost::multiprecision::cpp_bin_float_50;
  const C z(R(w.real()), R(w.imag()));
  const C q = z * z / 4;
  const R gamma("0.57721566490153286060651209008240243104215933593992");
  C i1 = 0, tail = 0;
  C power = 1;  // (w^2/4)^k / (k! (k+1)!)
  R harmonic = 0;  // H_k
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      power *= q / (R(k) * R(k + 1));
      harmonic += R(1) / k;
    }
    const R psi_sum = (-gamma + harmonic) + (-gamma + harmonic + R(1) / (k + 1));
    i1 += power;
    tail += psi_sum * power;
  }
  i1 *= z / 2;
  const C k1 = C(1) / z + log(z / 2) * i1 - z / 4 * tail;
  return {static_cast<double>(k1.real()), static_cast<double>(k1.imag())};
}

}  // namespace oracle
