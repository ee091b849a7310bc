#include "hypkern/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hypkern/errors.hpp"

namespace hypkern::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Below this J/Y use their ascending series; above it Miller's recurrence.
constexpr double kBesselJYSeriesLimit = 2.0;

void require_order(int order, const char* fn) {
  if (order != 0 && order != 1) {
    throw DomainError(std::string(fn) + ": order must be 0 or 1, got " + std::to_string(order));
  }
}

void require_finite(double z, const char* fn) {
  if (!std::isfinite(z)) throw DomainError(std::string(fn) + ": argument is not finite");
}

struct Pair {
  double v0;
  double v1;
};

// ---------------------------------------------------------------------------
// Modified Bessel functions I

Pair bessel_i_series(double z) {
  const double q = 0.25 * z * z;
  double t0 = 1.0;        // (z^2/4)^k / (k!)^2
  double t1 = 0.5 * z;    // (z/2) (z^2/4)^k / (k! (k+1)!)
  double s0 = t0;
  double s1 = t1;
  for (int k = 1; k < 500; ++k) {
    t0 *= q / (static_cast<double>(k) * k);
    t1 *= q / (static_cast<double>(k) * (k + 1));
    s0 += t0;
    s1 += t1;
    if (t0 < kEps * 0.25 * s0 && t1 < kEps * 0.25 * s1) break;
  }
  return {s0, s1};
}

// e^z / sqrt(2 pi z) sum_k (-1)^k a_k(nu) / z^k
double bessel_i_asymptotic(int order, double z) {
  const double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (k * 8.0 * z);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < kEps * 0.25 * std::abs(sum)) break;
  }
  return std::exp(z) / std::sqrt(2.0 * kPi * z) * sum;
}

// ---------------------------------------------------------------------------
// Modified Bessel functions K

Pair bessel_k_series(double z) {
  const double q = 0.25 * z * z;
  const double lg = std::log(0.5 * z);
  const Pair i = bessel_i_series(z);

  // K0 = -(ln(z/2) + gamma) I0 + sum_{k>=1} H_k q^k / (k!)^2
  double t = 1.0;
  double harmonic = 0.0;
  double s0 = 0.0;
  // K1 = 1/z + ln(z/2) I1 - (z/4) sum_{k>=0} (psi(k+1) + psi(k+2)) q^k / (k!(k+1)!)
  double u = 1.0;
  double s1 = (1.0 - 2.0 * kEulerGamma);  // k = 0: psi(1) + psi(2)
  for (int k = 1; k < 200; ++k) {
    t *= q / (static_cast<double>(k) * k);
    u *= q / (static_cast<double>(k) * (k + 1));
    harmonic += 1.0 / k;
    const double psi_sum = -2.0 * kEulerGamma + 2.0 * harmonic + 1.0 / (k + 1);
    const double d0 = harmonic * t;
    const double d1 = psi_sum * u;
    s0 += d0;
    s1 += d1;
    if (std::abs(d0) < kEps * 0.1 * std::abs(s0) && std::abs(d1) < kEps * 0.1 * std::abs(s1)) break;
  }
  const double k0 = -(lg + kEulerGamma) * i.v0 + s0;
  const double k1 = 1.0 / z + lg * i.v1 - 0.25 * z * s1;
  return {k0, k1};
}

// Temme's method: Steed's continued fraction CF2 for K_mu, mu = 0.
Pair bessel_k_temme(double z) {
  double b = 2.0 * (1.0 + z);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 10000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 0.5 * kEps) break;
  }
  h *= a1;
  const double k0 = std::sqrt(kPi / (2.0 * z)) * std::exp(-z) / s;
  const double k1 = k0 * (z + 0.5 - h) / z;
  return {k0, k1};
}

// ---------------------------------------------------------------------------
// Bessel functions J and Y

struct JY {
  double j0, j1, y0, y1;
};

JY bessel_jy_series(double z) {
  const double q = -0.25 * z * z;
  const double lg = std::log(0.5 * z) + kEulerGamma;

  double t = 1.0;  // q^k / (k!)^2
  double u = 1.0;  // q^k / (k! (k+1)!)
  double j0 = 1.0;
  double j1s = 1.0;
  double harmonic = 0.0;
  double y0s = 0.0;                   // sum_{k>=1} H_k q^k / (k!)^2
  double y1s = 1.0 - 2.0 * kEulerGamma;  // sum_{k>=0} (psi(k+1)+psi(k+2)) q^k / (k!(k+1)!)
  for (int k = 1; k < 200; ++k) {
    t *= q / (static_cast<double>(k) * k);
    u *= q / (static_cast<double>(k) * (k + 1));
    harmonic += 1.0 / k;
    j0 += t;
    j1s += u;
    y0s += harmonic * t;
    y1s += (-2.0 * kEulerGamma + 2.0 * harmonic + 1.0 / (k + 1)) * u;
    if (std::abs(t) < 1e-18 && std::abs(u) < 1e-18) break;
  }
  const double j1 = 0.5 * z * j1s;
  const double y0 = (2.0 / kPi) * (lg * j0 - y0s);
  const double y1 =
      -2.0 / (kPi * z) + (2.0 / kPi) * std::log(0.5 * z) * j1 - (z / (2.0 * kPi)) * y1s;
  return {j0, j1, y0, y1};
}

// Miller's backward recurrence normalised by J0 + 2 sum J_2k = 1, with Y0, Y1
// from the Neumann series over the same J_k.
JY bessel_jy_miller(double z) {
  constexpr int kMax = 120;
  std::array<double, kMax + 2> jk{};
  int m = 2 * static_cast<int>((z + 24.0 + 6.0 * std::cbrt(z)) / 2.0);
  if (m > kMax) m = kMax;
  jk[m + 1] = 0.0;
  jk[m] = 1e-30;
  for (int k = m; k >= 1; --k) {
    jk[k - 1] = (2.0 * k / z) * jk[k] - jk[k + 1];
    if (std::abs(jk[k - 1]) > 1e250) {
      for (int i = k - 1; i <= m + 1; ++i) jk[i] *= 1e-250;
    }
  }
  double norm = jk[0];
  for (int k = 2; k <= m; k += 2) norm += 2.0 * jk[k];
  for (int k = 0; k <= m + 1; ++k) jk[k] /= norm;

  const double lg = std::log(0.5 * z) + kEulerGamma;
  double s0 = 0.0;
  double s1 = 0.0;
  double sign = -1.0;
  for (int k = 1; 2 * k + 1 <= m + 1; ++k) {
    s0 += sign * jk[2 * k] / k;
    s1 += sign * (jk[2 * k - 1] - jk[2 * k + 1]) / k;
    sign = -sign;
  }
  const double y0 = (2.0 / kPi) * lg * jk[0] - (4.0 / kPi) * s0;
  const double y1 = (2.0 / kPi) * (lg * jk[1] - jk[0] / z) + (2.0 / kPi) * s1;
  return {jk[0], jk[1], y0, y1};
}

// Hankel's expansion: P, Q for order nu.
Pair hankel_pq(int order, double z) {
  const double mu = 4.0 * order * order;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;  // a_k(nu) / z^k
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (k * 8.0 * z);
    if (std::abs(next) > std::abs(last) && k > 2) break;
    term = next;
    last = next;
    // k odd -> Q with sign (-1)^((k-1)/2); k even -> P with sign (-1)^(k/2)
    if (k % 2 == 1) {
      q += (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    } else {
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    }
    if (std::abs(term) < 0.1 * kEps) break;
  }
  return {p, q};
}

JY bessel_jy_asymptotic(double z) {
  const double amp = std::sqrt(2.0 / (kPi * z));
  const double c = std::cos(z);
  const double s = std::sin(z);
  const double r = std::numbers::sqrt2 / 2.0;
  // chi = z - pi/4 for order 0, z - 3 pi/4 for order 1
  const double cos0 = r * (c + s);
  const double sin0 = r * (s - c);
  const double cos1 = r * (s - c);
  const double sin1 = -r * (s + c);
  const Pair pq0 = hankel_pq(0, z);
  const Pair pq1 = hankel_pq(1, z);
  return {amp * (pq0.v0 * cos0 - pq0.v1 * sin0), amp * (pq1.v0 * cos1 - pq1.v1 * sin1),
          amp * (pq0.v0 * sin0 + pq0.v1 * cos0), amp * (pq1.v0 * sin1 + pq1.v1 * cos1)};
}

JY bessel_jy(double z) {
  if (z <= kBesselJYSeriesLimit) return bessel_jy_series(z);
  if (z < kBesselJYAsymptoticLimit) return bessel_jy_miller(z);
  return bessel_jy_asymptotic(z);
}

}  // namespace

double gamma_fn(double x) {
  require_finite(x, "gamma_fn");
  if (x <= 0.0) throw DomainError("gamma_fn: argument must be positive");
  const double g = std::tgamma(x);
  if (!std::isfinite(g)) throw OverflowError("gamma_fn: result overflows");
  return g;
}

double bessel_k(int order, double z) {
  require_order(order, "bessel_k");
  require_finite(z, "bessel_k");
  if (z <= 0.0) throw DomainError("bessel_k: argument must be positive");
  const Pair k = z <= kBesselKSeriesLimit ? bessel_k_series(z) : bessel_k_temme(z);
  return order == 0 ? k.v0 : k.v1;
}

double bessel_i(int order, double z) {
  require_order(order, "bessel_i");
  require_finite(z, "bessel_i");
  if (z < 0.0) throw DomainError("bessel_i: argument must be non-negative");
  if (z > kBesselIOverflow) throw OverflowError("bessel_i: result overflows for z > 700");
  if (z <= kBesselISeriesLimit) {
    const Pair i = bessel_i_series(z);
    return order == 0 ? i.v0 : i.v1;
  }
  return bessel_i_asymptotic(order, z);
}

double bessel_j(int order, double z) {
  require_order(order, "bessel_j");
  require_finite(z, "bessel_j");
  if (z < 0.0) throw DomainError("bessel_j: argument must be non-negative");
  if (z == 0.0) return order == 0 ? 1.0 : 0.0;
  const JY v = bessel_jy(z);
  return order == 0 ? v.j0 : v.j1;
}

double bessel_y(int order, double z) {
  require_order(order, "bessel_y");
  require_finite(z, "bessel_y");
  if (z <= 0.0) throw DomainError("bessel_y: argument must be positive");
  const JY v = bessel_jy(z);
  return order == 0 ? v.y0 : v.y1;
}

ComplexValue hankel1(int order, double z) {
  require_order(order, "hankel1");
  require_finite(z, "hankel1");
  if (z <= 0.0) throw DomainError("hankel1: argument must be positive");
  const JY v = bessel_jy(z);
  return order == 0 ? ComplexValue(v.j0, v.y0) : ComplexValue(v.j1, v.y1);
}

}  // namespace hypkern::specfun
