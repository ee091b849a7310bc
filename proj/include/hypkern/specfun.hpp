#pragma once

#include <complex>

// Special functions of integer order 0 and 1 on the real axis.
//
// Every function throws hypkern::DomainError for arguments outside its
// declared domain (including NaN and infinities); none of them return NaN.

namespace hypkern::specfun {

using ComplexValue = std::complex<double>;

/// Crossover between the small-argument series and Temme's continued
/// fraction for K0/K1.
inline constexpr double kBesselKSeriesLimit = 2.0;
/// Crossover between Miller's backward recurrence and the Hankel asymptotic
/// expansion for J/Y.
inline constexpr double kBesselJYAsymptoticLimit = 25.0;
/// Crossover between the power series and the asymptotic expansion for I0/I1.
inline constexpr double kBesselISeriesLimit = 50.0;
/// I0/I1 overflow threshold.
inline constexpr double kBesselIOverflow = 700.0;

/// Euler-Mascheroni constant (20 digits).
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Gamma function for x > 0.
double gamma_fn(double x);

/// Modified Bessel function of the second kind, order 0 or 1, z > 0.
/// Underflows to 0 for very large z.
double bessel_k(int order, double z);

/// Bessel function of the first kind, order 0 or 1, z >= 0.
double bessel_j(int order, double z);

/// Bessel function of the second kind, order 0 or 1, z > 0.
double bessel_y(int order, double z);

/// Modified Bessel function of the first kind, order 0 or 1, z >= 0.
/// Throws OverflowError for z > kBesselIOverflow.
double bessel_i(int order, double z);

/// Hankel function H^(1)_order(z) = J(z) + i Y(z) for z > 0.
ComplexValue hankel1(int order, double z);

inline double bessel_k0(double z) { return bessel_k(0, z); }
inline double bessel_k1(double z) { return bessel_k(1, z); }
inline double bessel_j0(double z) { return bessel_j(0, z); }
inline double bessel_j1(double z) { return bessel_j(1, z); }

}  // namespace hypkern::specfun
