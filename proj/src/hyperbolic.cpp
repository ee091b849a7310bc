#include "hypkern/hyperbolic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hypkern/errors.hpp"
#include "hypkern/finite_diff.hpp"
#include "hypkern/specfun.hpp"
#include "hypkern/term_expr.hpp"

namespace hypkern::hyperbolic {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTiny = 1e-300;
constexpr double kSingularThreshold = 1e-12;
// Finite-difference step for profiles without an exact derivative.
constexpr double kProfileStep = 1e-3;

// Gamma((n+1)/2) / pi^{(n+1)/2}
double poisson_constant(int n) {
  const double h = 0.5 * (n + 1);
  return specfun::gamma_fn(h) / std::pow(kPi, h);
}

// One level of the odd-dimensional heat kernels: K_{2m+1} =
// (4 pi t)^{-1/2} (2 pi)^{-m} value(rho, t) e^{-rho^2/4t}, with the
// derivative-over-sinh of the same expression alongside.
struct Level {
  TermExpr expr;
  CompiledTermExpr value;
  CompiledTermExpr derivative_over_sinh;
};

constexpr int kLevels = (Dimension::kMax - 1) / 2 + 1;

const std::array<Level, kLevels>& levels() {
  static const std::array<Level, kLevels> table = [] {
    std::vector<TermExpr> exprs{TermExpr::constant(1)};
    for (int m = 1; m <= kLevels; ++m) {
      exprs.push_back(exprs.back().derivative().divided_by_sinh().scaled(-1));
    }
    auto make = [&](int m) {
      return Level{exprs[m], CompiledTermExpr(exprs[m]), CompiledTermExpr(exprs[m + 1].scaled(-1))};
    };
    return [&]<std::size_t... I>(std::index_sequence<I...>) {
      return std::array<Level, kLevels>{make(static_cast<int>(I))...};
    }(std::make_index_sequence<kLevels>{});
  }();
  return table;
}

double level_scale(int m, double t) {
  return 1.0 / std::sqrt(4.0 * kPi * t) * std::pow(2.0 * kPi, -m);
}

double gaussian(double rho, double t) { return std::exp(-rho * rho / (4.0 * t)); }

double heat_odd_value(int m, double t, double rho) {
  const double g = gaussian(rho, t);
  if (g == 0.0) return 0.0;
  return level_scale(m, t) * levels()[m].value(rho, t) * g;
}

double heat_odd_dos(int m, double t, double rho) {
  const double g = gaussian(rho, t);
  if (g == 0.0) return 0.0;
  return level_scale(m, t) * levels()[m].derivative_over_sinh(rho, t) * g;
}

quad::QuadratureConfig descent_config(double rel_tol) {
  quad::QuadratureConfig cfg;
  cfg.rel_tol = rel_tol;
  cfg.abs_tol = kTiny;
  return cfg;
}

double heat_even_value(int n, double t, double rho) {
  const int m = n / 2;  // K_{n+1} = level m
  auto g = [m, t](double s) { return heat_odd_value(m, t, s); };
  const quad::QuadratureResult r = quad::integrate_descent(g, rho, descent_config(kDescentRelTol));
  return quad::require_converged(r, "heat_kernel_hyperbolic (descent)").value;
}

double heat_value(int n, double t, double rho) {
  return n % 2 == 1 ? heat_odd_value((n - 1) / 2, t, rho) : heat_even_value(n, t, rho);
}

double poisson_value(int n, double y, double rho) {
  const double sy = std::sin(0.5 * y);
  const double sr = std::sinh(0.5 * rho);
  const double d = 4.0 * sr * sr + 4.0 * sy * sy;
  return poisson_constant(n) * std::sin(y) / std::pow(d, 0.5 * (n + 1));
}

// (f(|x|))' / sinh(rho) by finite differences on the even extension.
double fd_derivative_over_sinh(const std::function<double(double)>& f, double rho) {
  auto even = [&f](double x) { return f(std::abs(x)); };
  const double h = kProfileStep;
  if (rho < 4.0 * h) return fd::second_derivative(even, 0.0, h);
  return fd::first_derivative(even, rho, h) / std::sinh(rho);
}

std::vector<double> geometric_breaks(double scale, double hi) {
  std::vector<double> breaks;
  for (double b = scale; b < hi; b *= 4.0) breaks.push_back(b);
  return breaks;
}

double volume_density(int n, double rho) {
  return n == 1 ? 1.0 : std::pow(std::sinh(rho), n - 1);
}

// int f(rho) u0(rho) omega_{n-1} sinh^{n-1}(rho) drho over [lo, hi].
template <class Kernel>
quad::Estimate apply_radial(Dimension n, const SampledFunction& u0, double hi_cut, double scale,
                            double rel_tol, Kernel&& kernel, const char* what) {
  if (!(u0.support_min() >= 0.0)) {
    throw DomainError(std::string(what) + ": radial data must live on rho >= 0");
  }
  const double lo = u0.support_min();
  const double hi = std::min(u0.support_max(), hi_cut);
  if (!(lo < hi)) return {0.0, 0.0};
  const double omega = sphere_area(n);
  const int nv = n.value();
  auto integrand = [&](double rho) {
    const double u = u0(rho);
    if (u == 0.0) return 0.0;
    return kernel(rho) * u * omega * volume_density(nv, rho);
  };
  std::vector<double> breaks = geometric_breaks(scale, hi);
  if (u0.nodes().size() <= 512) {
    breaks.insert(breaks.end(), u0.nodes().begin(), u0.nodes().end());
  }
  quad::QuadratureConfig cfg;
  cfg.rel_tol = rel_tol;
  cfg.abs_tol = 1e-15;
  cfg.max_subdivisions = 5000;
  return quad::require_converged(quad::integrate_finite(integrand, lo, hi, cfg, breaks), what);
}

}  // namespace

Dimension::Dimension(int n) : n_(n) {
  if (n < kMin || n > kMax) throw DomainError("Dimension: n must lie in [1, 9]");
}

HalfSpacePoint::HalfSpacePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DomainError("HalfSpacePoint: no coordinates");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw DomainError("HalfSpacePoint: coordinates must be finite");
  }
  if (!(coords_.back() > 0.0)) throw DomainError("HalfSpacePoint: last coordinate must be positive");
}

GeodesicDistance::GeodesicDistance(double rho) : rho_(rho) {
  if (!std::isfinite(rho) || rho < 0.0) {
    throw DomainError("GeodesicDistance: rho must be finite and nonnegative");
  }
}

SphereAngle::SphereAngle(double theta) : theta_(theta) {
  if (!(theta > 0.0 && theta <= kPi)) throw DomainError("SphereAngle: theta must lie in (0, pi]");
}

double sphere_area(Dimension n) {
  const double h = 0.5 * n.value();
  return 2.0 * std::pow(kPi, h) / specfun::gamma_fn(h);
}

GeodesicDistance geodesic_distance(const HalfSpacePoint& w, const HalfSpacePoint& wp) {
  if (w.dimension() != wp.dimension()) {
    throw DomainError("geodesic_distance: points have different dimensions");
  }
  double sq = 0.0;
  for (int i = 0; i < w.dimension(); ++i) {
    const double d = w.coords()[i] - wp.coords()[i];
    sq += d * d;
  }
  const double arg = std::sqrt(sq) / (2.0 * std::sqrt(w.height() * wp.height()));
  return GeodesicDistance(2.0 * std::asinh(arg));
}

double poisson_kernel_hyperbolic(Dimension n, PoissonTime y, GeodesicDistance rho) {
  if (y.value() < kSingularThreshold && rho.value() < kSingularThreshold) {
    throw DomainError("poisson_kernel_hyperbolic: singular point (rho = 0, y -> 0)");
  }
  return poisson_value(n.value(), y.value(), rho.value());
}

double poisson_kernel_sphere(Dimension n, double y, SphereAngle theta) {
  if (!std::isfinite(y) || !(y > 0.0)) throw DomainError("poisson_kernel_sphere: y must be positive");
  const double p = 0.5 * (n.value() + 1);
  const double st = std::sin(0.5 * theta.value());
  const double c = 4.0 * st * st;
  if (y < 40.0) {
    const double sy = std::sinh(0.5 * y);
    return poisson_constant(n.value()) * std::sinh(y) / std::pow(4.0 * sy * sy + c, p);
  }
  // 4 sinh^2(y/2) = e^y (1 - e^{-y})^2 and sinh y = e^y (1 - e^{-2y}) / 2
  const double e = std::exp(-y);
  const double log_num = y - std::numbers::ln2 + std::log1p(-e * e);
  const double log_den = p * (y + std::log((1.0 - e) * (1.0 - e) + c * e));
  return poisson_constant(n.value()) * std::exp(log_num - log_den);
}

double heat_kernel_hyperbolic(Dimension n, HeatTime t, GeodesicDistance rho) {
  return heat_value(n.value(), t.value(), rho.value());
}

double heat_kernel_odd(Dimension n, double t, double rho) {
  if (!n.odd()) throw DomainError("heat_kernel_odd: n must be odd");
  if (!std::isfinite(t) || !(t > 0.0)) throw DomainError("heat_kernel_odd: t must be positive");
  GeodesicDistance checked(rho);
  return heat_odd_value((n.value() - 1) / 2, t, checked.value());
}

quad::Estimate heat_kernel_plane(HeatTime t, GeodesicDistance rho, double rel_tol) {
  const double tv = t.value();
  const double r = rho.value();
  const double prefactor = std::pow(4.0 * kPi * tv, -1.5);
  auto integrand = [tv, r, prefactor](double s) {
    // cosh^2(s/2) - cosh^2(r/2) = sinh((s + r)/2) sinh((s - r)/2)
    const double gap = std::sinh(0.5 * (s + r)) * std::sinh(0.5 * (s - r));
    if (!(gap > 0.0)) return 0.0;
    const double g = gaussian(s, tv);
    if (g == 0.0) return 0.0;
    return prefactor * s * g / std::sqrt(gap);
  };
  quad::QuadratureConfig cfg;
  cfg.rel_tol = rel_tol;
  cfg.abs_tol = rel_tol * 1e-6 * prefactor * tv * gaussian(r, tv);
  if (!(cfg.abs_tol > 0.0)) return {0.0, 0.0};
  const double sigma = std::sqrt(2.0 * tv);
  const quad::GaussianLike decay{sigma, prefactor * (r + sigma) * gaussian(r, tv)};
  const quad::QuadratureResult res =
      quad::integrate_semi_infinite(integrand, r, decay, cfg, {.sqrt_singular_at_start = true});
  return quad::require_converged(res, "heat_kernel_plane");
}

struct RadialProfile::Symbolic {
  int level;
  double t;
};

RadialProfile::RadialProfile(Dimension n, ProfileKind kind, Evaluator f,
                             Evaluator derivative_over_sinh)
    : n_(n), kind_(kind), f_(std::move(f)), dos_(std::move(derivative_over_sinh)) {
  if (!f_) throw DomainError("RadialProfile: empty evaluator");
}

RadialProfile::RadialProfile(Dimension n, ProfileKind kind, Evaluator f)
    : RadialProfile(n, kind, std::move(f), nullptr) {}

RadialProfile RadialProfile::poisson(Dimension n, PoissonTime y) {
  const int nv = n.value();
  const double yv = y.value();
  const double c = poisson_constant(nv);
  auto f = [nv, yv](double rho) { return poisson_value(nv, yv, rho); };
  // d/drho D^{-(n+1)/2} = -(n+1)/2 D^{-(n+3)/2} * 2 sinh(rho), D = 2 cosh rho - 2 cos y
  auto dos = [nv, yv, c](double rho) {
    const double sy = std::sin(0.5 * yv);
    const double sr = std::sinh(0.5 * rho);
    const double d = 4.0 * sr * sr + 4.0 * sy * sy;
    return -(nv + 1) * c * std::sin(yv) / std::pow(d, 0.5 * (nv + 3));
  };
  return RadialProfile(n, PoissonKind{yv}, f, dos);
}

RadialProfile RadialProfile::heat(Dimension n, HeatTime t) {
  const int nv = n.value();
  const double tv = t.value();
  if (n.odd()) {
    const int m = (nv - 1) / 2;
    RadialProfile p(
        n, HeatKind{tv}, [m, tv](double rho) { return heat_odd_value(m, tv, rho); },
        [m, tv](double rho) { return heat_odd_dos(m, tv, rho); });
    p.symbolic_ = std::make_shared<const Symbolic>(Symbolic{m, tv});
    return p;
  }
  RadialProfile p(n, HeatKind{tv}, [nv, tv](double rho) { return heat_even_value(nv, tv, rho); });
  return p;
}

RadialProfile RadialProfile::zero(Dimension n, ProfileKind kind) {
  auto z = [](double) { return 0.0; };
  return RadialProfile(n, kind, z, z);
}

double RadialProfile::derivative_over_sinh(double rho) const {
  if (dos_) return dos_(rho);
  return fd_derivative_over_sinh(f_, rho);
}

RadialProfile dimension_raise(const RadialProfile& p) {
  const int n2 = p.dimension().value() + 2;
  if (n2 > Dimension::kMax) throw DomainError("dimension_raise: result exceeds dimension 9");
  const Dimension target(n2);
  if (p.symbolic_ && p.symbolic_->level + 1 < kLevels) {
    RadialProfile out = RadialProfile::heat(target, HeatTime(p.symbolic_->t));
    out.kind_ = p.kind_;
    return out;
  }
  const double inv = -1.0 / (2.0 * kPi);
  auto source = std::make_shared<RadialProfile>(p);
  RadialProfile out(target, p.kind(),
                    [source, inv](double rho) { return inv * source->derivative_over_sinh(rho); });
  out.reduced_accuracy_ = p.reduced_accuracy_ || !p.derivative_available();
  return out;
}

quad::Estimate dimension_descend(const RadialProfile& p, GeodesicDistance r, double rel_tol) {
  if (p.dimension().value() < 2) throw DomainError("dimension_descend: profile dimension must be >= 2");
  auto g = [&p](double rho) { return p(rho); };
  return quad::require_converged(
      quad::integrate_descent(g, r.value(), descent_config(rel_tol)), "dimension_descend");
}

quad::Estimate poisson_apply_radial(Dimension n, PoissonTime y, const SampledFunction& u0,
                                    double rel_tol) {
  const int nv = n.value();
  const double yv = y.value();
  auto kernel = [nv, yv](double rho) { return poisson_value(nv, yv, rho); };
  return apply_radial(n, u0, std::numeric_limits<double>::infinity(), yv, rel_tol, kernel,
                      "poisson_apply_radial");
}

quad::Estimate heat_apply_radial(Dimension n, HeatTime t, const SampledFunction& v0,
                                 double rel_tol) {
  const int nv = n.value();
  const double tv = t.value();
  auto kernel = [nv, tv](double rho) { return heat_value(nv, tv, rho); };
  const double cut = 2.0 * tv * (nv - 1) + std::sqrt(200.0 * tv) + 1.0;
  return apply_radial(n, v0, cut, std::sqrt(2.0 * tv), rel_tol, kernel, "heat_apply_radial");
}

quad::Estimate kernel_mass(Dimension n, const ProfileKind& kind) {
  const int nv = n.value();
  if (nv > 5) throw DomainError("kernel_mass: n must not exceed 5");
  const double omega = sphere_area(n);
  quad::QuadratureConfig cfg;
  cfg.rel_tol = 1e-11;
  cfg.abs_tol = kTiny;
  cfg.max_subdivisions = 5000;

  if (const auto* pk = std::get_if<PoissonKind>(&kind)) {
    if (nv > 2) throw DomainError("kernel_mass: the Poisson mass diverges for n >= 3");
    const PoissonTime y(pk->y);
    const double yv = y.value();
    // integrand decays like e^{-(3-n) rho / 2}
    const double rate = 0.5 * (3 - nv);
    const double cut = 40.0 / rate;
    auto integrand = [nv, yv, omega](double rho) {
      return omega * poisson_value(nv, yv, rho) * volume_density(nv, rho);
    };
    const std::vector<double> breaks = geometric_breaks(yv, cut);
    quad::Estimate e = quad::require_converged(
        quad::integrate_finite(integrand, 0.0, cut, cfg, breaks), "kernel_mass");
    // remainder bound: integrand <= 2^{n-1} omega C sin y e^{-rate rho} / (1 - e^{-rho})^{n+1}
    e.error += omega * poisson_constant(nv) * std::exp(-rate * cut) / rate * 4.0;
    return e;
  }
  const HeatTime t(std::get<HeatKind>(kind).t);
  const double tv = t.value();
  const double peak = 2.0 * tv * (nv - 1);
  const double cut = peak + std::sqrt(200.0 * tv) + 1.0;
  auto integrand = [nv, tv, omega](double rho) {
    return omega * heat_value(nv, tv, rho) * volume_density(nv, rho);
  };
  std::vector<double> breaks = geometric_breaks(std::sqrt(2.0 * tv), cut);
  if (peak > 0.0) breaks.push_back(peak);
  if (nv % 2 == 0) cfg.rel_tol = 1e-10;
  return quad::require_converged(quad::integrate_finite(integrand, 0.0, cut, cfg, breaks),
                                 "kernel_mass");
}

}  // namespace hypkern::hyperbolic
