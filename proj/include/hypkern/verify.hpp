#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hypkern/sampled_function.hpp"

// Independent checks of the kernels: finite-difference operators, PDE
// residual sweeps over fixed grids, Fourier and subordination oracles, and
// identity-limit checks.

namespace hypkern::verify {

using Function = std::function<double(double)>;

/// Value of a differential operator together with the magnitude of its
/// largest term (used to normalize residuals).
struct OperatorTerms {
  double value = 0.0;
  double largest_term = 0.0;
};

/// x^2 f'' + x f' - a^2 x^2 f. Step defaults to max(1e-4, 1e-4 x).
OperatorTerms bessel_operator_terms(double a, const Function& f, double x, double h = 0.0);
double apply_bessel_operator(double a, const Function& f, double x, double h = 0.0);

/// f'' - a^2 e^{2X} f.
OperatorTerms morse_operator_terms(double a, const Function& f, double X, double h = 0.0);
double apply_morse_operator(double a, const Function& f, double X, double h = 0.0);

/// f'' + (n-1) coth(rho) f' + ((n-1)/2)^2 f.
OperatorTerms hyperbolic_radial_terms(int n, const Function& f, double rho, double h = 0.0);
double apply_hyperbolic_radial(int n, const Function& f, double rho, double h = 0.0);

/// f'' + (n-1) cot(theta) f' - ((n-1)/2)^2 f.
OperatorTerms sphere_radial_terms(int n, const Function& f, double theta, double h = 0.0);
double apply_sphere_radial(int n, const Function& f, double theta, double h = 0.0);

inline constexpr double kScaleFloor = 1e-30;

struct ResidualReport {
  std::string name;
  std::string grid;  // grid identifier, e.g. "grid-v1/poisson-hyperbolic"
  std::size_t points = 0;
  double max_abs = 0.0;
  double max_rel = 0.0;
  std::vector<double> worst_point;
  double fd_step = 0.0;
  double scale_floor = kScaleFloor;
};

struct CheckOutcome {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string notes;
  /// False for diagnostics that never gate an overall verdict.
  bool asserting = true;
  std::vector<std::pair<std::string, double>> details;
};

/// Builds an outcome with pass = (measured <= tolerance).
CheckOutcome make_outcome(std::string name, double measured, double tolerance,
                          std::string notes = {}, bool asserting = true);

// Kernel families for the sweeps.
struct BesselFamily {
  double a;
};
struct HyperbolicFamily {
  int n;
};
struct SphereFamily {
  int n;
};
/// The zero function, with the operator of H^n.
struct ZeroFamily {
  int n;
};
using PoissonFamily = std::variant<BesselFamily, HyperbolicFamily, SphereFamily, ZeroFamily>;
using HeatFamily = std::variant<BesselFamily, HyperbolicFamily, ZeroFamily>;

/// A versioned set of sample points. Poisson points are (y, x, x') for the
/// Bessel family and (y, rho) otherwise; heat points are (t, x, x') or (t, rho).
struct Grid {
  std::string id;
  std::vector<std::vector<double>> points;
};

inline constexpr const char* kGridVersion = "grid-v1";

Grid poisson_grid(const PoissonFamily& family);
Grid heat_grid(const HeatFamily& family);

/// max over the grid of |(spatial operator + d^2/dy^2) P|.
ResidualReport poisson_residual_sweep(const PoissonFamily& family, const Grid& grid);
ResidualReport poisson_residual_sweep(const PoissonFamily& family);

/// max over the grid of |(spatial operator - d/dt) K|.
ResidualReport heat_residual_sweep(const HeatFamily& family, const Grid& grid);
ResidualReport heat_residual_sweep(const HeatFamily& family);

/// Inverse Fourier transform in the frequency of the Bessel Poisson kernel at
/// n = 2, (2 pi)^{-1/2} int cos(x xi) p_{|xi|}(y, x2, x2') dxi, against
/// (2 pi)^{-1/2} x2 x2' sin(y) / (z^2 + x^2)^{3/2}. Relative tolerance 1e-5.
CheckOutcome fourier_lemma_check(double y, double x2, double x2p, double x, double tol = 1e-5);

/// The sine part of the same transform, which vanishes by symmetry.
CheckOutcome fourier_lemma_odd_part(double y, double x2, double x2p, double x, double tol = 1e-10);

/// (x2 x2')^{-1/2} int cos(a xi) K_2(t, rho(xi)) dxi, the Bessel heat kernel
/// density in dX' reconstructed from the heat kernel of H^2. Requires
/// |a| <= 20 and t <= 2.
double fourier_heat_oracle(double a, double t, double x2, double x2p);

/// (y / (2 sqrt(pi))) int_0^inf t^{-3/2} e^{-y^2/4t} K_n(t, rho) dt for n in
/// {1, 3}, compared with the Poisson kernel P_n(y, rho). Reports only.
CheckOutcome subordination_probe(int n, double y, double rho);
/// The subordination integral itself.
double subordination_integral(int n, double y, double rho);

/// Deviations of an approximate identity across a schedule of times. Passes
/// when the deviations do not increase and the last is <= tol.
CheckOutcome identity_limit_check(std::string name, const std::vector<double>& schedule,
                                  const std::function<double(double)>& sup_deviation,
                                  double tol = 2e-2);

/// Smooth bump on [lo, hi] with peak 1, sampled on `count` nodes.
SampledFunction bump(double lo, double hi, int count);
/// The same bump in ln x: nodes geometric on [lo, hi], lo > 0.
SampledFunction log_bump(double lo, double hi, int count);

enum class Suite { All, Residuals, Recurrences, Oracles, Limits };

std::optional<Suite> parse_suite(const std::string& name);

struct SuiteEntry {
  CheckOutcome outcome;
  std::optional<ResidualReport> residual;
};

std::vector<SuiteEntry> run_suite(Suite suite);

/// True if every asserting outcome passed.
bool suite_passed(const std::vector<SuiteEntry>& entries);

}  // namespace hypkern::verify
