#include "hypkern/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "hypkern/errors.hpp"

namespace hypkern::quad {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMinPositive = std::numeric_limits<double>::min();

// 21-point Kronrod abscissae on [-1, 1] (positive half, descending); the odd
// entries are the 10-point Gauss abscissae.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208937349355, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod21(const Integrand& f, double a, double b, long& evaluations, bool& finite) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 21> fv{};
  fv[10] = f(centre);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(centre - dx);
    fv[20 - j] = f(centre + dx);
  }
  evaluations += 21;

  double resk = kWgk[10] * fv[10];
  double resg = 0.0;
  double resabs = std::abs(resk);
  for (int j = 0; j < 10; ++j) {
    const double pair = fv[j] + fv[20 - j];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[20 - j]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fv[10] - mean);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[20 - j] - mean));
  }
  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kMinPositive / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);

  if (!std::isfinite(value) || !std::isfinite(err)) finite = false;
  return {a, b, value, err};
}

QuadratureResult combine(const QuadratureResult& x, const QuadratureResult& y) {
  return {x.value + y.value, x.error_estimate + y.error_estimate, x.converged && y.converged,
          x.evaluations + y.evaluations};
}

double log_sinh(double x) {
  if (x > 20.0) return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

// sinh(w) / w
double sinhc(double w) {
  if (w < 1e-4) return 1.0 + w * w / 6.0;
  return std::sinh(w) / w;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw DomainError("QuadratureConfig: tolerances must be positive");
  }
  if (max_subdivisions < 1) throw DomainError("QuadratureConfig: max_subdivisions must be >= 1");
}

Estimate require_converged(const QuadratureResult& r, const std::string& what) {
  if (!r.converged) {
    throw QuadratureError(what + ": quadrature did not converge (estimate " +
                          std::to_string(r.value) + " +/- " + std::to_string(r.error_estimate) +
                          ")");
  }
  return {r.value, r.error_estimate};
}

QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg,
                                  std::span<const double> breakpoints) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate_finite: infinite limit");
  if (a > b) throw DomainError("integrate_finite: require a <= b");
  QuadratureResult out;
  if (a == b) return out;

  std::vector<double> edges{a};
  for (double p : breakpoints) {
    if (p > a && p < b) edges.push_back(p);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  bool finite = true;
  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const Segment s = kronrod21(f, edges[i], edges[i + 1], out.evaluations, finite);
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }

  auto resum = [&] {
    std::vector<Segment> all;
    all.reserve(heap.size());
    double v = 0.0;
    double e = 0.0;
    // priority_queue has no iteration; drain and refill
    while (!heap.empty()) {
      all.push_back(heap.top());
      heap.pop();
    }
    for (const Segment& s : all) {
      v += s.value;
      e += s.error;
      heap.push(s);
    }
    total = v;
    total_err = e;
  };

  int iteration = 0;
  bool converged = false;
  while (finite) {
    if (total_err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
      resum();
      if (total_err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
        converged = true;
        break;
      }
    }
    if (static_cast<int>(heap.size()) >= cfg.max_subdivisions) break;
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 100.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      break;  // interval cannot be refined further
    }
    heap.pop();
    const Segment left = kronrod21(f, worst.a, mid, out.evaluations, finite);
    const Segment right = kronrod21(f, mid, worst.b, out.evaluations, finite);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (++iteration % 256 == 0) resum();
  }
  resum();
  out.value = total;
  out.error_estimate = finite ? total_err : std::numeric_limits<double>::infinity();
  out.converged = converged && finite;
  return out;
}

double truncation_point(double a, const DecayHint& decay, double abs_tol) {
  if (const auto* g = std::get_if<GaussianLike>(&decay)) {
    if (!(g->sigma > 0.0)) throw DomainError("GaussianLike: sigma must be positive");
    const double l = std::log(std::max(10.0 * std::abs(g->amplitude) * g->sigma / abs_tol, 2.0));
    return a + 1.5 * g->sigma * std::sqrt(2.0 * l);
  }
  if (const auto* e = std::get_if<ExponentialLike>(&decay)) {
    if (!(e->rate > 0.0)) throw DomainError("ExponentialLike: rate must be positive");
    const double l = std::log(std::max(10.0 * std::abs(e->amplitude) / (e->rate * abs_tol), 2.0));
    return a + 1.5 * l / e->rate;
  }
  throw DomainError("truncation_point: algebraic decay has no finite cut");
}

namespace {

QuadratureResult integrate_start(const Integrand& f, double a, double b,
                                 const QuadratureConfig& cfg, bool fold) {
  if (!fold) return integrate_finite(f, a, b, cfg);
  auto folded = [&f, a](double v) {
    if (v == 0.0) return 0.0;
    return f(a + v * v) * 2.0 * v;
  };
  return integrate_finite(folded, 0.0, std::sqrt(b - a), cfg);
}

}  // namespace

QuadratureResult integrate_semi_infinite(const Integrand& f, double a, const DecayHint& decay,
                                         const QuadratureConfig& cfg,
                                         SemiInfiniteOptions options) {
  cfg.validate();
  if (!std::isfinite(a)) throw DomainError("integrate_semi_infinite: lower limit not finite");
  if (const auto* alg = std::get_if<AlgebraicLike>(&decay)) {
    if (!(alg->power > 1.0)) throw DomainError("AlgebraicLike: power must exceed 1");
    const double q = 1.0 / (alg->power - 1.0);
    QuadratureResult head = integrate_start(f, a, a + 1.0, cfg, options.sqrt_singular_at_start);
    auto mapped = [&f, a, q](double w) {
      const double s = a + std::pow(w, -q);
      const double fs = f(s);
      if (fs == 0.0) return 0.0;
      return fs * q * std::pow(w, -q - 1.0);
    };
    return combine(head, integrate_finite(mapped, 0.0, 1.0, cfg));
  }
  const double cut = truncation_point(a, decay, cfg.abs_tol);
  return integrate_start(f, a, cut, cfg, options.sqrt_singular_at_start);
}

double descent_integrand(const Integrand& g, double r, double u) {
  const double rho = r + u * u;
  if (rho == 0.0) return 0.0;
  const double gv = g(rho);
  if (gv == 0.0) return 0.0;
  const double w = 0.5 * u * u;
  double weight;
  if (rho < 20.0) {
    weight = std::sinh(rho) / std::sqrt(std::sinh(0.5 * (rho + r))) * 2.0 *
             std::numbers::sqrt2 / std::sqrt(sinhc(w));
  } else {
    const double log_sinhc = w < 1e-4 ? w * w / 6.0 : log_sinh(w) - std::log(w);
    weight = std::exp(log_sinh(rho) - 0.5 * log_sinh(0.5 * (rho + r)) +
                      1.5 * std::numbers::ln2 - 0.5 * log_sinhc);
  }
  return gv * weight;
}

QuadratureResult integrate_descent(const Integrand& g, double r, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("integrate_descent: require r >= 0");
  auto h = [&g, r](double u) { return descent_integrand(g, r, u); };

  constexpr std::array<double, 10> kEdges = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0};
  QuadratureResult total;
  int quiet_panels = 0;
  for (std::size_t i = 0; i + 1 < kEdges.size(); ++i) {
    const QuadratureResult panel = integrate_finite(h, kEdges[i], kEdges[i + 1], cfg);
    total = combine(total, panel);
    const double threshold = 0.1 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total.value));
    if (std::abs(panel.value) + panel.error_estimate <= threshold) {
      if (++quiet_panels == 2) return total;
    } else {
      quiet_panels = 0;
    }
  }
  return total;
}

}  // namespace hypkern::quad
