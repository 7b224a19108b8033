#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "octosep/calibration.hpp"
#include "octosep/cli.hpp"
#include "octosep/report.hpp"

using namespace octosep;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "octosep");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("octosep_test_" + name);
}

}  // namespace

TEST_CASE("invalid input exits with 2") {
  CHECK(run({"simulate", "--samples", "0"}).code == 2);
  CHECK(run({"simulate", "--a", "0"}).code == 2);
  CHECK(run({"simulate", "--a", "x/y"}).code == 2);
  CHECK(run({"simulate", "--dim", "5"}).code == 2);
  CHECK(run({"simulate", "--gamma-variant", "odd"}).code == 2);
  CHECK(run({"sweep", "--a-grid", "1:2"}).code == 2);
  CHECK(run({"formulas", "--which", "P1", "--alpha", "-1"}).code == 2);
  CHECK(run({"formulas", "--which", "Pk4", "--k", "-3"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("formulas output") {
  auto r = run({"formulas", "--which", "Pk4", "--k", "0"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["value_exact"] == "44482/4091349");
  CHECK(j["form"] == "exact");
  CHECK(j["manifest"]["schema"] == kSchemaVersion);
  CHECK(j["manifest"]["subcommand"] == "formulas");

  r = run({"formulas", "--which", "Pk4", "--k", "2"});
  CHECK(json::parse(r.out)["value_exact"] == "4893392/95041567");

  r = run({"formulas", "--which", "P2", "--alpha", "1/2", "--k", "0", "--precision", "30"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["value_exact"].is_null());
  CHECK(j["form"] == "truncated-series");
  CHECK(j["recognized_rational"] == "29/64");
  CHECK(j["value_decimal"].get<std::string>().rfind("0.4531250000000000000000", 0) == 0);

  r = run({"formulas", "--which", "Qk4", "--k", "9"});
  j = json::parse(r.out);
  CHECK(std::stod(j["ordering_ratio_decimal"].get<std::string>()) ==
        doctest::Approx(0.932124).epsilon(1e-6));
}

TEST_CASE("simulate replays from its manifest") {
  auto r = run({"simulate", "--a", "1/2", "--samples", "1500", "--seed", "3", "--workers", "2"});
  REQUIRE(r.code == 0);
  const auto first = json::parse(r.out);
  CHECK(first["manifest"]["per_worker_samples"] == json({750, 750}));
  CHECK(first["config"]["a"] == 0.5);
  CHECK(first["config"]["a_text"] == "1/2");
  const auto argv = first["manifest"]["argv"].get<std::vector<std::string>>();
  const auto second = json::parse(run(argv).out);
  for (const char* key : {"pos_det", "ppt", "ordering_count", "generated"})
    CHECK(first[key] == second[key]);
}

TEST_CASE("simulate in dims 2 and 3 reports determinant signs") {
  const auto r = run({"simulate", "--dim", "3", "--samples", "500"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["generated"] == 500);
  CHECK(j["negative"].get<int>() + j["positive"].get<int>() <= 500);
}

TEST_CASE("octonion minors exit with 3 and provenance") {
  const auto r = run({"simulate", "--samples", "300", "--minor-mode", "octonion", "--seed", "9"});
  CHECK(r.code == 3);
  const auto j = json::parse(r.err);
  CHECK(j["error"] == "ImaginaryResidualExceeded");
  CHECK(j["provenance"]["seed"] == 9);
  CHECK(j["provenance"].contains("stream"));
}

TEST_CASE("sweep CSV and JSON agree, calibrate reads the sweep back") {
  const auto out = temp_path("sweep.json");
  const auto r = run({"sweep", "--a-grid", "1/4:1:1/4", "--samples", "800", "--out", out.string()});
  REQUIRE(r.code == 0);
  std::ifstream jf(out);
  const auto j = json::parse(jf);
  std::ifstream cf(out.string() + ".csv");
  std::string line;
  std::getline(cf, line);
  CHECK(line == "a,sep_prob,stderr");
  std::size_t rows = 0;
  while (std::getline(cf, line)) {
    double a = 0, p = 0, s = 0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &p, &s) == 3);
    CHECK(a == j["grid"][rows]["a"].get<double>());
    CHECK(p == j["grid"][rows]["sep_prob"].get<double>());
    CHECK(s == j["grid"][rows]["stderr"].get<double>());
    ++rows;
  }
  CHECK(rows == 4);

  const auto back = sweep_from_json(j);
  CHECK(back.grid.size() == 4);
  CHECK(back.interpolant(0.3) == doctest::Approx(MonotoneCubic(back.interpolant.knots(),
                                                               back.interpolant.values())(0.3)));

  const auto c = run({"calibrate", "--from", out.string(), "--k-list", "0,9"});
  REQUIRE(c.code == 0);
  const auto cj = json::parse(c.out);
  CHECK(cj["points"].size() == 2);
  CHECK(cj["points"][0]["no_bracket"] == true);
  CHECK(cj["reference_f_at_zero"] == 2.04852);
  CHECK(run({"calibrate", "--from", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"calibrate", "--from", out.string(), "--k-list", "9,x"}).code == 2);
  std::filesystem::remove(out);
  std::filesystem::remove(out.string() + ".csv");
}

TEST_CASE("eigcheck output") {
  const auto r = run({"eigcheck", "--n", "2", "--samples", "2000", "--bins", "10"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["a_implied"] == 3.0);
  CHECK(j["histogram"].size() == 100);
  CHECK(j["manifest"]["subcommand"] == "eigcheck");
}

TEST_CASE("config JSON round trip") {
  SimulationConfig cfg;
  cfg.a = 1.0 / 175.0;
  cfg.gamma_variant = GammaVariant::shifted;
  cfg.samples = 1234;
  cfg.seed = 42;
  cfg.workers = 3;
  cfg.minor_mode = MinorMode::octonion;
  const auto back = config_from_json(to_json(cfg));
  CHECK(back.a == cfg.a);
  CHECK(back.gamma_variant == cfg.gamma_variant);
  CHECK(back.samples == cfg.samples);
  CHECK(back.seed == cfg.seed);
  CHECK(back.workers == cfg.workers);
  CHECK(back.minor_mode == cfg.minor_mode);
}

TEST_CASE("worker default from the environment") {
  setenv("OCTOSEP_WORKERS", "3", 1);
  CHECK(cli::default_workers() == 3);
  setenv("OCTOSEP_WORKERS", "zero", 1);
  CHECK(cli::default_workers() == 1);
  unsetenv("OCTOSEP_WORKERS");
  CHECK(cli::default_workers() == 1);
}
