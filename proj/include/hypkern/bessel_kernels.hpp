#pragma once

#include <complex>
#include <vector>

#include "hypkern/quad.hpp"
#include "hypkern/sampled_function.hpp"

// Poisson and heat kernels of the modified Bessel operator
//   L^a = x^2 d^2/dx^2 + x d/dx - a^2 x^2   on (0, inf)
// and of its Morse-potential form d^2/dX^2 - a^2 e^{2X} under X = ln x.
//
// All kernels are densities with respect to dx'/x' = dX'.

namespace hypkern::bessel {

/// Nonzero frequency a.
class BesselFrequency {
 public:
  explicit BesselFrequency(double a);
  double value() const { return a_; }
  double magnitude() const { return a_ < 0 ? -a_ : a_; }

 private:
  double a_;
};

/// |a| bound for heat-kernel operations.
inline constexpr double kMaxHeatFrequency = 20.0;

class HalfLineCoord {
 public:
  explicit HalfLineCoord(double x);
  double value() const { return x_; }

 private:
  double x_;
};

/// Logarithmic coordinate X = ln x.
class LogCoord {
 public:
  explicit LogCoord(double X);
  double value() const { return X_; }

 private:
  double X_;
};

/// Poisson time y in the open interval (0, pi).
class PoissonTime {
 public:
  explicit PoissonTime(double y);
  double value() const { return y_; }

 private:
  double y_;
};

/// Heat time t in (0, 10].
class HeatTime {
 public:
  static constexpr double kMax = 10.0;
  explicit HeatTime(double t);
  double value() const { return t_; }

 private:
  double t_;
};

/// Below this |a| z the K1 factor is replaced by its limit |a| z K1(|a| z) -> 1.
inline constexpr double kSmallArgumentThreshold = 1e-12;

/// Default relative tolerance of the heat-kernel integrals.
inline constexpr double kHeatKernelRelTol = 1e-9;

/// p_a(y, x, x') = |a|/pi * x x' sin(y) K1(|a| z) / z,
/// z^2 = x^2 + x'^2 - 2 x x' cos(y).
double poisson_kernel_bessel(BesselFrequency a, PoissonTime y, HalfLineCoord x, HalfLineCoord xp);

/// The same kernel in logarithmic coordinates: p_a(y, e^X, e^X').
double poisson_kernel_morse(BesselFrequency a, PoissonTime y, LogCoord X, LogCoord Xp);

/// Imaginary-frequency (a = i b) kernel
///   q_b(y, x, x') = -|b|/2 * x x' sin(y) H1_1(|b| z) / z.
std::complex<double> poisson_kernel_hankel(double b, PoissonTime y, HalfLineCoord x,
                                           HalfLineCoord xp);

/// Heat kernel
///   K_a(t, x, x') = 1/(4 sqrt(pi) t^{3/2}) int_{s0}^inf s e^{-s^2/4t}
///                    J0(|a| sqrt(2 x x' cosh s - x^2 - x'^2)) ds,
/// s0 = |ln x - ln x'|. Requires |a| <= 20. Throws QuadratureError if the
/// integral does not converge.
quad::Estimate heat_kernel_bessel(BesselFrequency a, HeatTime t, HalfLineCoord x,
                                  HalfLineCoord xp, double rel_tol = kHeatKernelRelTol);

/// Heat kernel in logarithmic coordinates, integrating
///   s e^{-s^2/4t} J0(2|a| e^{(X+X')/2} sqrt(cosh^2(s/2) - cosh^2((X-X')/2)))
/// from |X - X'|.
quad::Estimate heat_kernel_morse(BesselFrequency a, HeatTime t, LogCoord X, LogCoord Xp,
                                 double rel_tol = kHeatKernelRelTol);

/// Kernel applied to sampled data on an output grid, with per-point error
/// estimates.
struct AppliedSolution {
  SampledFunction solution;
  std::vector<double> error_estimates;
};

struct ApplyConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
};

/// u(y, x) = int p_a(y, x, x') u0(x') dx'/x' at each output node (> 0).
AppliedSolution poisson_apply_bessel(BesselFrequency a, PoissonTime y, const SampledFunction& u0,
                                     const std::vector<double>& output_nodes,
                                     ApplyConfig cfg = {});
AppliedSolution poisson_apply_bessel(BesselFrequency a, PoissonTime y, const SampledFunction& u0,
                                     ApplyConfig cfg = {});

/// v(t, x) = int K_a(t, x, x') v0(x') dx'/x' at each output node (> 0).
AppliedSolution heat_apply_bessel(BesselFrequency a, HeatTime t, const SampledFunction& v0,
                                  const std::vector<double>& output_nodes, ApplyConfig cfg = {});
AppliedSolution heat_apply_bessel(BesselFrequency a, HeatTime t, const SampledFunction& v0,
                                  ApplyConfig cfg = {});

}  // namespace hypkern::bessel
