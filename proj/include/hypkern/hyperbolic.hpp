#pragma once

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "hypkern/bessel_kernels.hpp"
#include "hypkern/quad.hpp"
#include "hypkern/sampled_function.hpp"

// Radial kernels on hyperbolic space H^n (upper half-space model) and on the
// sphere S^n. Kernels are functions of the geodesic distance rho and are
// densities with respect to the Riemannian volume
//   d mu = omega_{n-1} sinh^{n-1}(rho) d rho,  omega_{n-1} = 2 pi^{n/2} / Gamma(n/2).

namespace hypkern::hyperbolic {

using bessel::HeatTime;
using bessel::PoissonTime;

class Dimension {
 public:
  static constexpr int kMin = 1;
  static constexpr int kMax = 9;
  explicit Dimension(int n);
  int value() const { return n_; }
  bool odd() const { return n_ % 2 == 1; }

 private:
  int n_;
};

/// Point (x_1, ..., x_n) with x_n > 0.
class HalfSpacePoint {
 public:
  explicit HalfSpacePoint(std::vector<double> coords);
  const std::vector<double>& coords() const { return coords_; }
  int dimension() const { return static_cast<int>(coords_.size()); }
  double height() const { return coords_.back(); }

 private:
  std::vector<double> coords_;
};

class GeodesicDistance {
 public:
  explicit GeodesicDistance(double rho);
  double value() const { return rho_; }

 private:
  double rho_;
};

/// Angle on the sphere, in (0, pi].
class SphereAngle {
 public:
  explicit SphereAngle(double theta);
  double value() const { return theta_; }

 private:
  double theta_;
};

/// omega_{n-1}, the area of the unit sphere in R^n.
double sphere_area(Dimension n);

/// rho = 2 asinh(|w - w'| / (2 sqrt(x_n x_n'))). Throws DomainError on a
/// dimension mismatch.
GeodesicDistance geodesic_distance(const HalfSpacePoint& w, const HalfSpacePoint& wp);

/// Gamma((n+1)/2) / pi^{(n+1)/2} * sin y / (2 cosh rho - 2 cos y)^{(n+1)/2}.
double poisson_kernel_hyperbolic(Dimension n, PoissonTime y, GeodesicDistance rho);

/// Gamma((n+1)/2) / pi^{(n+1)/2} * sinh y / (2 cosh y - 2 cos theta)^{(n+1)/2}, y > 0.
double poisson_kernel_sphere(Dimension n, double y, SphereAngle theta);

/// Heat kernel K_n(t, rho). Odd n: the Gaussian raised (n-1)/2 times by
/// -(2 pi sinh rho)^{-1} d/drho, in exact symbolic form. Even n: descent of
/// K_{n+1}. Throws QuadratureError if a descent integral fails.
double heat_kernel_hyperbolic(Dimension n, HeatTime t, GeodesicDistance rho);

/// Odd-n closed form for any t > 0 (no upper bound on t). Used by the
/// subordination integral, which runs over all times.
double heat_kernel_odd(Dimension n, double t, double rho);

/// K_2 by direct quadrature of
///   int_rho^inf (cosh^2(s/2) - cosh^2(rho/2))^{-1/2} e^{-s^2/4t} / (4 pi t)^{3/2} s ds.
quad::Estimate heat_kernel_plane(HeatTime t, GeodesicDistance rho, double rel_tol = 1e-12);

/// Default relative tolerance of descent integrals.
inline constexpr double kDescentRelTol = 1e-12;

struct PoissonKind {
  double y;
};
struct HeatKind {
  double t;
};
using ProfileKind = std::variant<PoissonKind, HeatKind>;

/// A radial function on H^n with enough structure to be raised in dimension.
/// Profiles built from closed forms carry an exact (d/drho f) / sinh(rho);
/// other profiles fall back to finite differences and say so.
class RadialProfile {
 public:
  using Evaluator = std::function<double(double)>;

  RadialProfile(Dimension n, ProfileKind kind, Evaluator f, Evaluator derivative_over_sinh);
  /// Generic profile; its derivative comes from finite differences.
  RadialProfile(Dimension n, ProfileKind kind, Evaluator f);

  static RadialProfile poisson(Dimension n, PoissonTime y);
  static RadialProfile heat(Dimension n, HeatTime t);
  static RadialProfile zero(Dimension n, ProfileKind kind);

  double operator()(double rho) const { return f_(rho); }
  /// (d/drho f)(rho) / sinh(rho), extended continuously to rho = 0.
  double derivative_over_sinh(double rho) const;

  Dimension dimension() const { return n_; }
  const ProfileKind& kind() const { return kind_; }
  bool derivative_available() const { return static_cast<bool>(dos_); }
  /// True when some step of the construction used finite differences.
  bool reduced_accuracy() const { return reduced_accuracy_; }

 private:
  friend RadialProfile dimension_raise(const RadialProfile& p);

  Dimension n_;
  ProfileKind kind_;
  Evaluator f_;
  Evaluator dos_;
  bool reduced_accuracy_ = false;
  // Symbolic form of the heat profile, when it has one: value =
  // scale * expr(rho, t) * e^{-rho^2/4t}.
  struct Symbolic;
  std::shared_ptr<const Symbolic> symbolic_;
};

/// -(2 pi sinh rho)^{-1} d/drho, taking a dimension-n profile to dimension n+2.
/// Throws DomainError if n + 2 exceeds the dimension bound.
RadialProfile dimension_raise(const RadialProfile& p);

/// int_r^inf p(rho) sinh(rho) / sqrt(cosh^2(rho/2) - cosh^2(r/2)) drho: the
/// dimension-(n-1) kernel at distance r from a dimension-n profile.
quad::Estimate dimension_descend(const RadialProfile& p, GeodesicDistance r,
                                 double rel_tol = kDescentRelTol);

/// U(y) at the base point: int P_n(y, rho) u0(rho) d mu over the support of u0.
quad::Estimate poisson_apply_radial(Dimension n, PoissonTime y, const SampledFunction& u0,
                                    double rel_tol = 1e-10);

/// V(t) at the base point: int K_n(t, rho) v0(rho) d mu.
quad::Estimate heat_apply_radial(Dimension n, HeatTime t, const SampledFunction& v0,
                                 double rel_tol = 1e-10);

/// omega_{n-1} int_0^inf kernel(rho) sinh^{n-1}(rho) drho for n <= 5. The
/// Poisson mass is finite only for n <= 2; larger n throw DomainError.
quad::Estimate kernel_mass(Dimension n, const ProfileKind& kind);

}  // namespace hypkern::hyperbolic
