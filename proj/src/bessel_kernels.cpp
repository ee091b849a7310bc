#include "hypkern/bessel_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hypkern/errors.hpp"
#include "hypkern/specfun.hpp"

namespace hypkern::bessel {
namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

// z^2 = x^2 + x'^2 - 2 x x' cos y, written without cancellation.
double chord_squared(double x, double xp, double y) {
  const double d = x - xp;
  const double s = std::sin(0.5 * y);
  return d * d + 4.0 * x * xp * s * s;
}

// Shared driver for the two heat-kernel integrals. `argument(s)` returns the
// J0 argument; the integral runs over [s0, inf).
template <class Argument>
quad::Estimate heat_integral(double a_abs, double t, double s0, double rel_tol,
                             Argument&& argument, const char* what) {
  if (a_abs > kMaxHeatFrequency) {
    throw DomainError(std::string(what) + ": |a| must not exceed 20");
  }
  if (!(rel_tol > 0.0)) throw DomainError(std::string(what) + ": rel_tol must be positive");
  const double prefactor = 1.0 / (4.0 * std::sqrt(kPi) * t * std::sqrt(t));
  const double envelope = std::exp(-s0 * s0 / (4.0 * t));
  if (envelope == 0.0) return {0.0, 0.0};

  // With J0 = 1 the integral is 2 t e^{-s0^2/4t}; tolerances are relative to it.
  const double scale = 2.0 * t * envelope;
  quad::QuadratureConfig cfg;
  cfg.rel_tol = rel_tol;
  cfg.abs_tol = rel_tol * 1e-3 * scale;

  const double sigma = std::sqrt(2.0 * t);
  const double cut = quad::truncation_point(
      s0, quad::GaussianLike{sigma, std::max(s0, sigma) * envelope}, cfg.abs_tol);

  // About one initial panel per J0 half-period at the far end.
  const double oscillations = a_abs * argument(cut) / kPi;
  const int panels = static_cast<int>(std::clamp(8.0 + oscillations, 8.0, 20000.0));
  std::vector<double> breaks;
  breaks.reserve(panels);
  for (int i = 1; i < panels; ++i) breaks.push_back(s0 + (cut - s0) * i / panels);
  cfg.max_subdivisions = 4 * panels + 2000;

  auto integrand = [&](double s) {
    const double g = s * std::exp(-s * s / (4.0 * t));
    if (g == 0.0) return 0.0;
    return g * specfun::bessel_j0(a_abs * argument(s));
  };
  const quad::QuadratureResult r = quad::integrate_finite(integrand, s0, cut, cfg, breaks);
  const quad::Estimate e = quad::require_converged(r, what);
  return {prefactor * e.value, prefactor * e.error};
}

}  // namespace

BesselFrequency::BesselFrequency(double a) : a_(a) {
  require_finite(a, "BesselFrequency");
  if (a == 0.0) throw DomainError("BesselFrequency: a must be nonzero");
}

HalfLineCoord::HalfLineCoord(double x) : x_(x) {
  require_finite(x, "HalfLineCoord");
  if (!(x > 0.0)) throw DomainError("HalfLineCoord: x must be positive");
}

LogCoord::LogCoord(double X) : X_(X) { require_finite(X, "LogCoord"); }

PoissonTime::PoissonTime(double y) : y_(y) {
  require_finite(y, "PoissonTime");
  if (!(y > 0.0 && y < kPi)) throw DomainError("PoissonTime: y must lie in (0, pi)");
}

HeatTime::HeatTime(double t) : t_(t) {
  require_finite(t, "HeatTime");
  if (!(t > 0.0 && t <= kMax)) throw DomainError("HeatTime: t must lie in (0, 10]");
}

double poisson_kernel_bessel(BesselFrequency a, PoissonTime y, HalfLineCoord x, HalfLineCoord xp) {
  const double xv = x.value();
  const double xpv = xp.value();
  const double z2 = chord_squared(xv, xpv, y.value());
  if (!(z2 > 0.0)) throw DomainError("poisson_kernel_bessel: singular point (z = 0)");
  const double z = std::sqrt(z2);
  const double numerator = xv * xpv * std::sin(y.value());
  const double az = a.magnitude() * z;
  if (az < kSmallArgumentThreshold) return numerator / (kPi * z2);
  return a.magnitude() / kPi * numerator * specfun::bessel_k1(az) / z;
}

double poisson_kernel_morse(BesselFrequency a, PoissonTime y, LogCoord X, LogCoord Xp) {
  return poisson_kernel_bessel(a, y, HalfLineCoord(std::exp(X.value())),
                               HalfLineCoord(std::exp(Xp.value())));
}

std::complex<double> poisson_kernel_hankel(double b, PoissonTime y, HalfLineCoord x,
                                           HalfLineCoord xp) {
  require_finite(b, "poisson_kernel_hankel: b");
  if (b == 0.0) throw DomainError("poisson_kernel_hankel: b must be nonzero");
  const double z2 = chord_squared(x.value(), xp.value(), y.value());
  if (!(z2 > 0.0)) throw DomainError("poisson_kernel_hankel: singular point (z = 0)");
  const double z = std::sqrt(z2);
  const double bz = std::abs(b) * z;
  const double factor = -0.5 * std::abs(b) * x.value() * xp.value() * std::sin(y.value()) / z;
  return factor * specfun::hankel1(1, bz);
}

quad::Estimate heat_kernel_bessel(BesselFrequency a, HeatTime t, HalfLineCoord x,
                                  HalfLineCoord xp, double rel_tol) {
  const double xv = x.value();
  const double xpv = xp.value();
  const double s0 = std::abs(std::log(xv) - std::log(xpv));
  // 2 x x' cosh s - x^2 - x'^2 = 4 x x' sinh((s + s0)/2) sinh((s - s0)/2)
  auto argument = [xv, xpv, s0](double s) {
    const double v = 4.0 * xv * xpv * std::sinh(0.5 * (s + s0)) * std::sinh(0.5 * (s - s0));
    return v > 0.0 ? std::sqrt(v) : 0.0;
  };
  return heat_integral(a.magnitude(), t.value(), s0, rel_tol, argument, "heat_kernel_bessel");
}

quad::Estimate heat_kernel_morse(BesselFrequency a, HeatTime t, LogCoord X, LogCoord Xp,
                                 double rel_tol) {
  const double sum = X.value() + Xp.value();
  const double diff = X.value() - Xp.value();
  const double s0 = std::abs(diff);
  const double ch = std::cosh(0.5 * diff);
  const double amplitude = 2.0 * std::exp(0.5 * sum);
  auto argument = [amplitude, ch](double s) {
    const double c = std::cosh(0.5 * s);
    const double v = c * c - ch * ch;
    return v > 0.0 ? amplitude * std::sqrt(v) : 0.0;
  };
  return heat_integral(a.magnitude(), t.value(), s0, rel_tol, argument, "heat_kernel_morse");
}

namespace {

void require_positive_support(const SampledFunction& u0, const char* what) {
  if (!(u0.support_min() > 0.0)) {
    throw DomainError(std::string(what) + ": initial data must be supported in (0, inf)");
  }
}

template <class Kernel>
AppliedSolution apply_log_measure(const SampledFunction& u0, const std::vector<double>& output,
                                  ApplyConfig cfg, double width, double reach, Kernel&& kernel,
                                  const char* what) {
  require_positive_support(u0, what);
  const double lo = std::log(u0.support_min());
  const double hi = std::log(u0.support_max());
  std::vector<double> values(output.size(), 0.0);
  std::vector<double> errors(output.size(), 0.0);
  quad::QuadratureConfig qc;
  qc.rel_tol = cfg.rel_tol;
  qc.abs_tol = cfg.abs_tol;
  qc.max_subdivisions = 5000;

  for (std::size_t i = 0; i < output.size(); ++i) {
    const double x = output[i];
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError(std::string(what) + ": output nodes must be positive");
    }
    const double X = std::log(x);
    const double a = std::max(lo, X - reach);
    const double b = std::min(hi, X + reach);
    if (!(a < b)) continue;
    std::vector<double> breaks{X};
    for (double k : {1.0, 4.0, 16.0}) {
      breaks.push_back(X - k * width);
      breaks.push_back(X + k * width);
    }
    auto integrand = [&](double Xp) {
      const double xp = std::exp(Xp);
      const double u = u0(xp);
      if (u == 0.0) return 0.0;
      return kernel(x, xp) * u;
    };
    const quad::QuadratureResult r = quad::integrate_finite(integrand, a, b, qc, breaks);
    const quad::Estimate e = quad::require_converged(r, what);
    values[i] = e.value;
    errors[i] = e.error;
  }
  return {SampledFunction(output, std::move(values)), std::move(errors)};
}

}  // namespace

AppliedSolution poisson_apply_bessel(BesselFrequency a, PoissonTime y, const SampledFunction& u0,
                                     const std::vector<double>& output_nodes, ApplyConfig cfg) {
  auto kernel = [a, y](double x, double xp) {
    return poisson_kernel_bessel(a, y, HalfLineCoord(x), HalfLineCoord(xp));
  };
  return apply_log_measure(u0, output_nodes, cfg, y.value(), std::numeric_limits<double>::infinity(),
                           kernel, "poisson_apply_bessel");
}

AppliedSolution poisson_apply_bessel(BesselFrequency a, PoissonTime y, const SampledFunction& u0,
                                     ApplyConfig cfg) {
  return poisson_apply_bessel(a, y, u0, u0.nodes(), cfg);
}

AppliedSolution heat_apply_bessel(BesselFrequency a, HeatTime t, const SampledFunction& v0,
                                  const std::vector<double>& output_nodes, ApplyConfig cfg) {
  const double inner_tol = std::min(kHeatKernelRelTol, 0.1 * cfg.rel_tol);
  auto kernel = [a, t, inner_tol](double x, double xp) {
    return heat_kernel_bessel(a, t, HalfLineCoord(x), HalfLineCoord(xp), inner_tol).value;
  };
  // |K_a| is bounded by the Gaussian (4 pi t)^{-1/2} e^{-(X - X')^2/4t}.
  const double width = std::sqrt(2.0 * t.value());
  const double reach = std::sqrt(4.0 * t.value() * 40.0);
  AppliedSolution out =
      apply_log_measure(v0, output_nodes, cfg, width, reach, kernel, "heat_apply_bessel");
  for (std::size_t i = 0; i < out.error_estimates.size(); ++i) {
    out.error_estimates[i] += inner_tol * std::abs(out.solution.values()[i]);
  }
  return out;
}

AppliedSolution heat_apply_bessel(BesselFrequency a, HeatTime t, const SampledFunction& v0,
                                  ApplyConfig cfg) {
  return heat_apply_bessel(a, t, v0, v0.nodes(), cfg);
}

}  // namespace hypkern::bessel
