#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli_runner.hpp"
#include "hypkern/bessel_kernels.hpp"
#include "hypkern/cli.hpp"
#include "hypkern/hyperbolic.hpp"
#include "hypkern/verify.hpp"

using namespace hypkern;

namespace {

struct InProcess {
  int status;
  std::string out, err;
};

InProcess call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream in(s);
  for (std::string cell; std::getline(in, cell, ',');) v.push_back(cell);
  return v;
}

std::string write_data(const std::string& name, const SampledFunction& f) {
  const auto path = std::filesystem::temp_directory_path() / ("hypkern_test_" + name + ".csv");
  std::ofstream out(path);
  out << "node,value\n# generated\n";
  char buf[80];
  for (std::size_t i = 0; i < f.nodes().size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.nodes()[i], f.values()[i]);
    out << buf;
  }
  return path.string();
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(call({}).status == cli::kUsage);
  CHECK(call({"eval", "--bogus"}).status == cli::kUsage);
  CHECK(call({"eval", "--help"}).status == cli::kOk);
  CHECK(call({"eval", "--space", "bessel", "--kind", "poisson", "--a", "1", "--y", "1", "--x", "1"}).status ==
        cli::kUsage);
  CHECK(call({"eval", "--space", "sphere", "--kind", "heat", "--n", "2", "--t", "1", "--rho", "1"}).status ==
        cli::kUsage);
  const auto domain = call({"eval", "--space", "bessel", "--kind", "poisson", "--a", "1", "--y", "4", "--x", "1",
                            "--xp", "2"});
  CHECK(domain.status == cli::kDomain);
  CHECK(domain.out.empty());
  CHECK(call({"eval", "--space", "bessel", "--kind", "heat", "--a", "25", "--t", "1", "--x", "1", "--xp", "2"})
            .status == cli::kDomain);
  CHECK(call({"eval", "--space", "hyperbolic", "--kind", "poisson", "--n", "12", "--y", "1", "--rho", "1"}).status ==
        cli::kDomain);
  CHECK(call({"solve", "--space", "bessel", "--kind", "poisson", "--a", "1", "--y", "1", "--data",
              "/nonexistent/file.csv"})
            .status == cli::kUsage);
  CHECK(call({"verify", "--suite", "nope"}).status == cli::kUsage);
}

TEST_CASE("malformed data files") {
  const auto path = std::filesystem::temp_directory_path() / "hypkern_test_bad.csv";
  {
    std::ofstream out(path);
    out << "1,2\n0.5,3\n";  // decreasing nodes
  }
  CHECK(call({"solve", "--space", "bessel", "--kind", "poisson", "--a", "1", "--y", "1", "--data", path.string()})
            .status == cli::kUsage);
  {
    std::ofstream out(path);
    out << "1,2\n2,abc\n";
  }
  CHECK(call({"solve", "--space", "bessel", "--kind", "poisson", "--a", "1", "--y", "1", "--data", path.string()})
            .status == cli::kUsage);
}

TEST_CASE("binary output is byte-identical across runs") {
  const std::vector<std::string> args = {"eval", "--space", "bessel", "--kind", "heat", "--a", "1.5",
                                         "--t", "0.4", "--x", "1", "--grid", "0.5:2:7"};
  const auto first = clirun::run(args), second = clirun::run(args);
  CHECK(first.status == 0);
  CHECK(first.out.size() > 0);
  CHECK(first.out == second.out);
  CHECK(call(args).out == first.out);
}

TEST_CASE("JSON values round-trip exactly") {
  const auto r = call({"eval", "--space", "bessel", "--kind", "poisson", "--a", "0.7", "--y", "1.1", "--x", "1.3",
                       "--grid", "0.2:3:9", "--format", "json"});
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  CHECK(rows.size() == 9);
  for (const auto& row : rows) {
    const auto j = nlohmann::json::parse(row);
    CHECK(j["formula"] == "bessel-poisson-k1");
    const double want = bessel::poisson_kernel_bessel(bessel::BesselFrequency(0.7), bessel::PoissonTime(1.1),
                                                      bessel::HalfLineCoord(1.3),
                                                      bessel::HalfLineCoord(j["xp"].get<double>()));
    CHECK(j["value"].get<double>() == want);
    CHECK_FALSE(j.contains("error_estimate"));
  }
}

TEST_CASE("CSV values round-trip exactly and match JSON") {
  const std::vector<std::string> base = {"eval", "--space", "hyperbolic", "--kind", "heat", "--n", "3",
                                         "--t", "0.6", "--grid", "0:4:11"};
  const auto csv = call(base);
  auto json_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto json = call(json_args);
  REQUIRE(csv.status == 0);
  const auto rows = lines(csv.out), jrows = lines(json.out);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == "formula,n,t,rho,value,error_estimate");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    const double rho = std::strtod(cells[3].c_str(), nullptr);
    const double value = std::strtod(cells[4].c_str(), nullptr);
    CHECK(value == hyperbolic::heat_kernel_hyperbolic(hyperbolic::Dimension(3), hyperbolic::HeatTime(0.6),
                                                      hyperbolic::GeodesicDistance(rho)));
    CHECK(value == nlohmann::json::parse(jrows[i - 1])["value"].get<double>());
  }
}

TEST_CASE("metadata line") {
  const auto r = call({"eval", "--space", "hyperbolic", "--kind", "poisson", "--n", "2", "--y", "1", "--rho", "1",
                       "--meta"});
  REQUIRE(r.status == 0);
  CHECK(lines(r.out).size() == 3);
}

TEST_CASE("solve") {
  const auto data = verify::log_bump(0.5, 2.0, 81);
  const auto data_path = write_data("bump", data);
  const auto zero_path = write_data("zero", SampledFunction(data.nodes(), std::vector<double>(81, 0.0)));
  const auto double_path = write_data("double", data.scaled(2.0));
  auto values = [](const InProcess& r) {
    std::vector<double> v;
    const auto rows = lines(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) v.push_back(std::strtod(split(rows[i])[4].c_str(), nullptr));
    return v;
  };
  const std::vector<std::string> head = {"solve", "--space", "bessel", "--kind", "poisson", "--a", "1", "--data"};
  auto with = [&](const std::string& path, std::vector<std::string> tail) {
    auto args = head;
    args.push_back(path);
    args.insert(args.end(), tail.begin(), tail.end());
    return call(args);
  };

  SUBCASE("zero data") {
    for (double v : values(with(zero_path, {"--y", "0.5", "--grid", "0.6:1.8:5"}))) CHECK(v == 0.0);
  }
  SUBCASE("linear in the data") {
    const auto one = values(with(data_path, {"--y", "0.5", "--grid", "0.6:1.8:5"}));
    const auto two = values(with(double_path, {"--y", "0.5", "--grid", "0.6:1.8:5"}));
    REQUIRE(one.size() == 5);
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(two[i] == doctest::Approx(2 * one[i]).epsilon(1e-7));
  }
  SUBCASE("small time reproduces the data") {
    const auto r = with(data_path, {"--y", "1e-3", "--grid", "0.6:1.8:9"});
    REQUIRE(r.status == 0);
    const auto v = values(r);
    REQUIRE(v.size() == 9);
    for (int i = 0; i < 9; ++i) CHECK(std::abs(v[i] - data(0.6 + 0.15 * i)) < 1e-2);
  }
  SUBCASE("hyperbolic solve reports the base point") {
    const auto radial = write_data("radial", verify::bump(0.0, 1.0, 51));
    const auto r = call({"solve", "--space", "hyperbolic", "--kind", "heat", "--n", "3", "--t", "0.1", "--data",
                         radial});
    REQUIRE(r.status == 0);
    CHECK(lines(r.out).size() == 2);
    CHECK(split(lines(r.out)[1])[0] == "hyperbolic-heat-apply");
  }
}

TEST_CASE("verify subcommand") {
  const auto r = call({"verify", "--suite", "recurrences", "--format", "json"});
  CHECK(r.status == 0);
  CHECK(r.out.size() > 0);
}
