#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>

namespace hypkern::quad {

using Integrand = std::function<double(double)>;

/// Gauss-Kronrod pair used on every subinterval: 10-point Gauss nested in a
/// 21-point Kronrod rule.
inline constexpr int kKronrodPoints = 21;

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;

  /// Throws DomainError unless both tolerances are positive and
  /// max_subdivisions >= 1.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  long evaluations = 0;
};

/// A value together with an absolute error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Throws QuadratureError naming `what` if the result did not converge.
Estimate require_converged(const QuadratureResult& r, const std::string& what);

/// Globally adaptive Gauss-Kronrod on [a, b]. `breakpoints` strictly inside
/// (a, b) seed the initial partition.
QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg = {},
                                  std::span<const double> breakpoints = {});

/// |f(s)| <~ amplitude * exp(-(s - a)^2 / (2 sigma^2))
struct GaussianLike {
  double sigma = 1.0;
  double amplitude = 1.0;
};
/// |f(s)| <~ amplitude * exp(-rate (s - a))
struct ExponentialLike {
  double rate = 1.0;
  double amplitude = 1.0;
};
/// |f(s)| <~ s^-power for large s, power > 1
struct AlgebraicLike {
  double power = 2.0;
};
using DecayHint = std::variant<GaussianLike, ExponentialLike, AlgebraicLike>;

struct SemiInfiniteOptions {
  /// Fold an inverse-square-root singularity at `a` by s = a + v^2.
  bool sqrt_singular_at_start = false;
};

/// Integral of f over [a, inf). Gaussian and exponential hints truncate the
/// range where the discarded tail is below abs_tol / 10 (with a 1.5 safety
/// factor on the cut distance); the algebraic hint maps the tail onto a
/// finite interval.
QuadratureResult integrate_semi_infinite(const Integrand& f, double a, const DecayHint& decay,
                                         const QuadratureConfig& cfg = {},
                                         SemiInfiniteOptions options = {});

/// Cut point used by integrate_semi_infinite for a truncating hint.
double truncation_point(double a, const DecayHint& decay, double abs_tol);

/// Descent integral
///   int_r^inf g(rho) sinh(rho) / sqrt(cosh^2(rho/2) - cosh^2(r/2)) d rho
/// computed after the substitution rho = r + u^2, which removes the
/// endpoint singularity. g must decay; r >= 0.
QuadratureResult integrate_descent(const Integrand& g, double r, const QuadratureConfig& cfg = {});

/// The regularised descent integrand in the variable u (rho = r + u^2).
double descent_integrand(const Integrand& g, double r, double u);

}  // namespace hypkern::quad
