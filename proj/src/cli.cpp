#include "hypkern/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypkern/bessel_kernels.hpp"
#include "hypkern/errors.hpp"
#include "hypkern/hyperbolic.hpp"
#include "hypkern/verify.hpp"

namespace hypkern::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

// Malformed invocation or input file (exit 1).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string space;
  std::string kind;
  std::optional<double> a, y, t, rho, x, xp, tol;
  std::optional<int> n;
  std::string grid;
  std::string data;
  std::string suite = "all";
  std::string format = "csv";
  bool meta = false;
};

struct Record {
  std::vector<std::pair<std::string, double>> fields;  // inputs, in output order
  double value = 0.0;
  std::optional<double> error;
  std::string formula;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--grid expects min:max:count");
  double lo, hi;
  long count;
  try {
    std::size_t used = 0;
    lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("");
    hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("");
    count = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw UsageError("--grid: cannot parse '" + spec + "'");
  }
  if (count < 1 || count > 1000000) throw UsageError("--grid: count must be in [1, 1000000]");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw UsageError("--grid: bounds must be finite");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  for (long i = 0; i < count; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return out;
}

void write_meta(std::ostream& out, const Options& o, const std::string& command) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  if (o.format == "json") {
    Json meta;
    meta["meta"] = {{"version", kVersion}, {"command", command}, {"timestamp", stamp}};
    out << meta.dump() << '\n';
  } else {
    out << "# version=" << kVersion << " command=" << command << " timestamp=" << stamp << '\n';
  }
}

void write_records(std::ostream& out, const std::vector<Record>& records, const std::string& format) {
  if (format == "json") {
    for (const Record& r : records) {
      Json j;
      j["formula"] = r.formula;
      for (const auto& [k, v] : r.fields) {
        if (k == "n") {
          j[k] = static_cast<int>(v);
        } else {
          j[k] = v;
        }
      }
      j["value"] = r.value;
      if (r.error) j["error_estimate"] = *r.error;
      out << j.dump() << '\n';
    }
    return;
  }
  if (records.empty()) return;
  out << "formula";
  for (const auto& f : records.front().fields) out << ',' << f.first;
  out << ",value,error_estimate\n";
  for (const Record& r : records) {
    out << r.formula;
    for (const auto& f : r.fields) out << ',' << format_double(f.second);
    out << ',' << format_double(r.value) << ',' << (r.error ? format_double(*r.error) : "") << '\n';
  }
}

void require(bool present, const std::string& flag, const std::string& context) {
  if (!present) throw UsageError(context + " requires " + flag);
}

void forbid(bool present, const std::string& flag, const std::string& context) {
  if (present) throw UsageError(flag + " is not used by " + context);
}

// Shared validation of --space/--kind and the parameter/time flags.
void check_kernel_options(const Options& o) {
  const std::string ctx = o.space + " " + o.kind;
  const bool bessel_like = o.space == "bessel" || o.space == "morse";
  if (o.space == "sphere" && o.kind == "heat") throw UsageError("no heat kernel for space sphere");
  if (bessel_like) {
    require(o.a.has_value(), "--a", ctx);
    forbid(o.n.has_value(), "--n", ctx);
  } else {
    require(o.n.has_value(), "--n", ctx);
    forbid(o.a.has_value(), "--a", ctx);
  }
  if (o.kind == "poisson") {
    require(o.y.has_value(), "--y", ctx);
    forbid(o.t.has_value(), "--t", ctx);
  } else {
    require(o.t.has_value(), "--t", ctx);
    forbid(o.y.has_value(), "--y", ctx);
  }
}

std::vector<Record> cmd_eval(const Options& o) {
  check_kernel_options(o);
  forbid(!o.data.empty(), "--data", "eval");
  const bool bessel_like = o.space == "bessel" || o.space == "morse";
  const bool poisson = o.kind == "poisson";
  const double time = poisson ? *o.y : *o.t;
  const std::string time_key = poisson ? "y" : "t";

  std::vector<double> points;
  if (bessel_like) {
    require(o.x.has_value(), "--x", "eval " + o.space);
    forbid(o.rho.has_value(), "--rho", "eval " + o.space);
    if (!o.grid.empty()) {
      forbid(o.xp.has_value(), "--xp (the grid supplies it)", "eval");
      points = parse_grid(o.grid);
    } else {
      require(o.xp.has_value(), "--xp or --grid", "eval " + o.space);
      points = {*o.xp};
    }
  } else {
    forbid(o.x.has_value() || o.xp.has_value(), "--x/--xp", "eval " + o.space);
    if (!o.grid.empty()) {
      forbid(o.rho.has_value(), "--rho (the grid supplies it)", "eval");
      points = parse_grid(o.grid);
    } else {
      require(o.rho.has_value(), "--rho or --grid", "eval " + o.space);
      points = {*o.rho};
    }
  }

  std::vector<Record> records;
  records.reserve(points.size());
  for (double p : points) {
    Record r;
    if (bessel_like) {
      const bool morse = o.space == "morse";
      const bessel::BesselFrequency a(*o.a);
      r.fields = {{"a", *o.a}, {time_key, time}, {morse ? "X" : "x", *o.x}, {morse ? "Xp" : "xp", p}};
      if (poisson) {
        const bessel::PoissonTime y(time);
        r.value = morse ? bessel::poisson_kernel_morse(a, y, bessel::LogCoord(*o.x), bessel::LogCoord(p))
                        : bessel::poisson_kernel_bessel(a, y, bessel::HalfLineCoord(*o.x),
                                                        bessel::HalfLineCoord(p));
        r.formula = morse ? "morse-poisson-k1" : "bessel-poisson-k1";
      } else {
        const bessel::HeatTime t(time);
        const double tol = o.tol.value_or(bessel::kHeatKernelRelTol);
        const quad::Estimate e =
            morse ? bessel::heat_kernel_morse(a, t, bessel::LogCoord(*o.x), bessel::LogCoord(p), tol)
                  : bessel::heat_kernel_bessel(a, t, bessel::HalfLineCoord(*o.x),
                                               bessel::HalfLineCoord(p), tol);
        r.value = e.value;
        r.error = e.error;
        r.formula = morse ? "morse-heat-j0-integral" : "bessel-heat-j0-integral";
      }
    } else {
      const hyperbolic::Dimension n(*o.n);
      if (o.space == "sphere") {
        r.fields = {{"n", *o.n}, {"y", time}, {"theta", p}};
        r.value = hyperbolic::poisson_kernel_sphere(n, time, hyperbolic::SphereAngle(p));
        r.formula = "sphere-poisson";
      } else {
        r.fields = {{"n", *o.n}, {time_key, time}, {"rho", p}};
        const hyperbolic::GeodesicDistance rho(p);
        if (poisson) {
          r.value = hyperbolic::poisson_kernel_hyperbolic(n, hyperbolic::PoissonTime(time), rho);
          r.formula = "hyperbolic-poisson";
        } else if (n.odd()) {
          r.value = hyperbolic::heat_kernel_hyperbolic(n, hyperbolic::HeatTime(time), rho);
          r.formula = "hyperbolic-heat-odd-raise";
        } else {
          const auto profile =
              hyperbolic::RadialProfile::heat(hyperbolic::Dimension(*o.n + 1), hyperbolic::HeatTime(time));
          const quad::Estimate e = hyperbolic::dimension_descend(
              profile, rho, o.tol.value_or(hyperbolic::kDescentRelTol));
          r.value = e.value;
          r.error = e.error;
          r.formula = "hyperbolic-heat-even-descent";
        }
      }
    }
    records.push_back(std::move(r));
  }
  return records;
}

SampledFunction read_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open data file '" + path + "'");
  std::vector<double> nodes, values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    double node = 0.0, value = 0.0;
    bool ok = comma != std::string::npos;
    if (ok) {
      try {
        std::size_t u1 = 0, u2 = 0;
        const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
        node = std::stod(a, &u1);
        value = std::stod(b, &u2);
        ok = a.find_first_not_of(" \t", u1) == std::string::npos &&
             b.find_first_not_of(" \t", u2) == std::string::npos;
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) {
      if (nodes.empty() && line_no == 1) continue;  // header row
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected 'node,value'");
    }
    if (!std::isfinite(node) || !std::isfinite(value)) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": non-finite entry");
    }
    if (!nodes.empty() && !(node > nodes.back())) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": nodes must increase strictly");
    }
    nodes.push_back(node);
    values.push_back(value);
  }
  if (nodes.size() < 2) throw UsageError(path + ": need at least two data rows");
  return SampledFunction(std::move(nodes), std::move(values));
}

std::vector<Record> cmd_solve(const Options& o) {
  check_kernel_options(o);
  require(!o.data.empty(), "--data", "solve");
  forbid(o.x.has_value() || o.xp.has_value() || o.rho.has_value(), "--x/--xp/--rho", "solve");
  const bool poisson = o.kind == "poisson";
  const double time = poisson ? *o.y : *o.t;
  const std::string time_key = poisson ? "y" : "t";
  if (o.space == "sphere") throw UsageError("solve supports bessel, morse and hyperbolic");
  const SampledFunction data = read_data(o.data);

  std::vector<Record> records;
  if (o.space == "hyperbolic") {
    forbid(!o.grid.empty(), "--grid (radial solutions are reported at the base point)", "solve");
    const hyperbolic::Dimension n(*o.n);
    const double tol = o.tol.value_or(1e-10);
    const quad::Estimate e =
        poisson ? hyperbolic::poisson_apply_radial(n, hyperbolic::PoissonTime(time), data, tol)
                : hyperbolic::heat_apply_radial(n, hyperbolic::HeatTime(time), data, tol);
    Record r;
    r.fields = {{"n", *o.n}, {time_key, time}, {"rho", 0.0}};
    r.value = e.value;
    r.error = e.error;
    r.formula = poisson ? "hyperbolic-poisson-apply" : "hyperbolic-heat-apply";
    records.push_back(std::move(r));
    return records;
  }

  const bool morse = o.space == "morse";
  // Morse data and grids live in X = ln x.
  SampledFunction u0 = data;
  if (morse) {
    std::vector<double> xs;
    for (double X : data.nodes()) xs.push_back(std::exp(X));
    u0 = SampledFunction(std::move(xs), data.values());
  }
  std::vector<double> out_coords = o.grid.empty() ? data.nodes() : parse_grid(o.grid);
  std::vector<double> out_x = out_coords;
  if (morse) {
    for (double& v : out_x) v = std::exp(v);
  }
  bessel::ApplyConfig cfg;
  if (o.tol) cfg.rel_tol = *o.tol;
  const bessel::BesselFrequency a(*o.a);
  const bessel::AppliedSolution sol =
      poisson ? bessel::poisson_apply_bessel(a, bessel::PoissonTime(time), u0, out_x, cfg)
              : bessel::heat_apply_bessel(a, bessel::HeatTime(time), u0, out_x, cfg);
  for (std::size_t i = 0; i < out_coords.size(); ++i) {
    Record r;
    r.fields = {{"a", *o.a}, {time_key, time}, {morse ? "X" : "x", out_coords[i]}};
    r.value = sol.solution.values()[i];
    r.error = sol.error_estimates[i];
    r.formula = std::string(morse ? "morse" : "bessel") + (poisson ? "-poisson-apply" : "-heat-apply");
    records.push_back(std::move(r));
  }
  return records;
}

Json to_json(const verify::SuiteEntry& e) {
  const verify::CheckOutcome& c = e.outcome;
  Json j;
  j["name"] = c.name;
  j["pass"] = c.pass;
  j["asserting"] = c.asserting;
  j["measured"] = c.measured;
  if (std::isfinite(c.tolerance)) {
    j["tolerance"] = c.tolerance;
  } else {
    j["tolerance"] = nullptr;
  }
  j["notes"] = c.notes;
  Json details = Json::object();
  for (const auto& [k, v] : c.details) details[k] = v;
  j["details"] = details;
  if (e.residual) {
    const verify::ResidualReport& r = *e.residual;
    j["residual"] = {{"grid", r.grid},         {"points", r.points},
                     {"max_abs", r.max_abs},   {"max_rel", r.max_rel},
                     {"worst_point", r.worst_point}, {"fd_step", r.fd_step},
                     {"scale_floor", r.scale_floor}};
  }
  return j;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto suite = verify::parse_suite(o.suite);
  if (!suite) throw UsageError("unknown suite '" + o.suite + "'");
  const std::vector<verify::SuiteEntry> entries = verify::run_suite(*suite);
  if (o.format == "json") {
    for (const auto& e : entries) out << to_json(e).dump() << '\n';
  } else {
    out << "name,pass,asserting,measured,tolerance,notes\n";
    for (const auto& e : entries) {
      const verify::CheckOutcome& c = e.outcome;
      out << csv_field(c.name) << ',' << (c.pass ? "true" : "false") << ','
          << (c.asserting ? "true" : "false") << ',' << format_double(c.measured) << ','
          << (std::isfinite(c.tolerance) ? format_double(c.tolerance) : "") << ','
          << csv_field(c.notes) << '\n';
    }
  }
  return verify::suite_passed(entries) ? kOk : kNumeric;
}

void add_kernel_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--space", o.space, "bessel | morse | hyperbolic | sphere")
      ->required()
      ->check(CLI::IsMember({"bessel", "morse", "hyperbolic", "sphere"}));
  cmd->add_option("--kind", o.kind, "poisson | heat")
      ->required()
      ->check(CLI::IsMember({"poisson", "heat"}));
  cmd->add_option("--a", o.a, "frequency (bessel, morse)");
  cmd->add_option("--n", o.n, "dimension (hyperbolic, sphere)");
  cmd->add_option("--y", o.y, "Poisson time");
  cmd->add_option("--t", o.t, "heat time");
  cmd->add_option("--grid", o.grid, "min:max:count for the varying coordinate");
  cmd->add_option("--tol", o.tol, "relative tolerance of quadrature-backed values");
}

void add_common_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--meta", o.meta, "print a run-metadata line first");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poisson and heat kernels on the half-line and on hyperbolic space", "hypkern"};
  app.require_subcommand(1);
  Options o;

  CLI::App* eval = app.add_subcommand("eval", "evaluate a kernel at points");
  add_kernel_options(eval, o);
  add_common_options(eval, o);
  eval->add_option("--rho", o.rho, "geodesic distance (hyperbolic) or angle (sphere)");
  eval->add_option("--x", o.x, "first point (X = ln x for morse)");
  eval->add_option("--xp", o.xp, "second point (X' for morse)");

  CLI::App* solve = app.add_subcommand("solve", "apply a kernel to sampled initial data");
  add_kernel_options(solve, o);
  add_common_options(solve, o);
  solve->add_option("--data", o.data, "CSV file of node,value rows")->required();

  CLI::App* ver = app.add_subcommand("verify", "run verification checks");
  ver->add_option("--suite", o.suite, "all | residuals | recurrences | oracles | limits");
  add_common_options(ver, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const std::string command = eval->parsed() ? "eval" : solve->parsed() ? "solve" : "verify";
  try {
    if (o.tol && !(*o.tol > 0.0 && *o.tol < 1.0)) throw DomainError("--tol must lie in (0, 1)");
    std::ostringstream buffer;  // nothing reaches `out` unless the command succeeds
    if (o.meta) write_meta(buffer, o, command);
    int code = kOk;
    if (command == "verify") {
      code = cmd_verify(o, buffer);
    } else {
      write_records(buffer, command == "eval" ? cmd_eval(o) : cmd_solve(o), o.format);
    }
    out << buffer.str();
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const QuadratureError& e) {
    err << "quadrature error: " << e.what() << '\n';
    return kNumeric;
  } catch (const OverflowError& e) {
    err << "overflow: " << e.what() << '\n';
    return kNumeric;
  }
}

}  // namespace hypkern::cli
