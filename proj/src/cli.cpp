#include "octosep/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "octosep/calibration.hpp"
#include "octosep/errors.hpp"
#include "octosep/formulas.hpp"
#include "octosep/montecarlo.hpp"
#include "octosep/report.hpp"

#ifndef OCTOSEP_VERSION
#define OCTOSEP_VERSION "dev"
#endif

namespace octosep::cli {

using nlohmann::json;

unsigned default_workers() {
  if (const char* env = std::getenv("OCTOSEP_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

namespace {

struct SimFlags {
  std::string a = "1";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  std::string gamma_variant = "plain";
  std::size_t dim = 4;
  unsigned workers = 1;
  std::string minor_mode = "real";
  std::string out;
};

void add_sim_flags(CLI::App* cmd, SimFlags& f) {
  cmd->add_option("--a", f.a, "Gamma-shape offset a; accepts p/q")->capture_default_str();
  cmd->add_option("--samples", f.samples, "Number of Wishart draws")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Master seed")->capture_default_str();
  cmd->add_option("--gamma-variant", f.gamma_variant, "plain | shifted")
      ->check(CLI::IsMember({"plain", "shifted"}))
      ->capture_default_str();
  cmd->add_option("--dim", f.dim, "Matrix dimension")
      ->check(CLI::IsMember({2, 3, 4}))
      ->capture_default_str();
  cmd->add_option("--workers", f.workers, "Worker threads (default $OCTOSEP_WORKERS or 1)")
      ->capture_default_str();
  cmd->add_option("--minor-mode", f.minor_mode, "real | octonion")
      ->check(CLI::IsMember({"real", "octonion"}))
      ->capture_default_str();
  cmd->add_option("--out", f.out, "Write the JSON document here instead of stdout");
}

SimulationConfig to_config(const SimFlags& f) {
  SimulationConfig cfg;
  cfg.a = static_cast<double>(formulas::parse_rational(f.a));
  cfg.gamma_variant = parse_gamma_variant(f.gamma_variant);
  cfg.dim = f.dim;
  cfg.samples = f.samples;
  cfg.seed = f.seed;
  cfg.workers = f.workers;
  cfg.minor_mode = parse_minor_mode(f.minor_mode);
  validate(cfg);
  return cfg;
}

json manifest(const std::string& subcommand, const std::vector<std::string>& args,
              double seconds, const std::vector<std::uint64_t>& per_worker) {
  return {{"schema", kSchemaVersion},
          {"tool", "octosep"},
          {"version", OCTOSEP_VERSION},
          {"subcommand", subcommand},
          {"argv", std::vector<std::string>(args.begin() + 1, args.end())},
          {"runtime_seconds", seconds},
          {"per_worker_samples", per_worker}};
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidConfig("cannot open output file '" + path + "'");
  f << doc.dump(2) << '\n';
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InvalidConfig("cannot open output file '" + path + "'");
  f << text;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::uint64_t> sweep_worker_totals(const SweepResult& r) {
  std::vector<std::uint64_t> totals;
  for (const auto& p : r.grid) {
    const auto& pw = p.estimate.per_worker;
    if (totals.size() < pw.size()) totals.resize(pw.size(), 0);
    for (std::size_t i = 0; i < pw.size(); ++i) totals[i] += pw[i];
  }
  return totals;
}

std::vector<long> parse_k_list(const std::string& text) {
  std::vector<long> ks;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    long k = 0;
    try {
      k = std::stol(item, &used);
    } catch (const std::exception&) {
      throw InvalidConfig("malformed k list '" + text + "'");
    }
    if (used != item.size() || k < 0) throw InvalidConfig("malformed k list '" + text + "'");
    ks.push_back(k);
  }
  if (ks.empty()) throw InvalidConfig("k list is empty");
  return ks;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Octonionic two-qubit separability probabilities: Monte Carlo and closed forms",
               "octosep"};
  app.require_subcommand(1);
  app.set_version_flag("--version", OCTOSEP_VERSION);

  SimFlags sim;
  sim.workers = default_workers();
  auto* simulate = app.add_subcommand("simulate", "Estimate the PPT probability of Wishart draws");
  add_sim_flags(simulate, sim);

  std::string which = "Pk4", alpha = "4", fout;
  long k = 0;
  unsigned precision = 30;
  auto* formulas_cmd = app.add_subcommand("formulas", "Evaluate the closed-form probabilities");
  formulas_cmd->add_option("--which", which, "P1 | P2 | Pk4 | Qk4")
      ->check(CLI::IsMember({"P1", "P2", "Pk4", "Qk4"}))
      ->capture_default_str();
  formulas_cmd->add_option("--alpha", alpha, "alpha as p/q")->capture_default_str();
  formulas_cmd->add_option("--k", k, "Induced-measure index k >= 0")->capture_default_str();
  formulas_cmd->add_option("--precision", precision, "Decimal digits (>= 20)")
      ->capture_default_str();
  formulas_cmd->add_option("--out", fout, "Write the JSON document here instead of stdout");

  SimFlags sw;
  sw.workers = default_workers();
  std::string grid_text, csv_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Estimate over an a grid and extrapolate to a = 0");
  add_sim_flags(sweep_cmd, sw);
  sweep_cmd->add_option("--a-grid", grid_text, "start:stop:step or comma list")->required();
  sweep_cmd->add_option("--csv", csv_path, "CSV output path (default <out>.csv when --out is set)");

  SimFlags cal;
  cal.workers = default_workers();
  std::string cal_grid, k_list = "9,12", from_path;
  auto* calibrate = app.add_subcommand("calibrate", "Fit a(k) by matching estimates to P(k,4)");
  add_sim_flags(calibrate, cal);
  calibrate->add_option("--a-grid", cal_grid, "Grid to sweep (ignored with --from)");
  calibrate->add_option("--k-list", k_list, "Comma-separated k values")->capture_default_str();
  calibrate->add_option("--from", from_path, "Reuse a sweep JSON document instead of sampling");

  std::uint64_t eig_n = 2, eig_samples = 100000, eig_seed = 0;
  int eig_bins = 50;
  unsigned eig_workers = default_workers();
  std::string eig_out;
  auto* eigcheck = app.add_subcommand("eigcheck", "Compare 2x2 eigenvalue pairs with the model density");
  eigcheck->add_option("--n", eig_n, "Rows of the Gaussian factor")->capture_default_str();
  eigcheck->add_option("--samples", eig_samples, "Draws")->capture_default_str();
  eigcheck->add_option("--bins", eig_bins, "Grid size per axis")->capture_default_str();
  eigcheck->add_option("--seed", eig_seed, "Master seed")->capture_default_str();
  eigcheck->add_option("--workers", eig_workers, "Worker threads")->capture_default_str();
  eigcheck->add_option("--out", eig_out, "Write the JSON document here instead of stdout");

  SimFlags f3;
  f3.dim = 3;
  f3.workers = default_workers();
  auto* forrester3 = app.add_subcommand("forrester3", "Fraction of 3x3 Wisharts with negative determinant");
  add_sim_flags(forrester3, f3);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << OCTOSEP_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*simulate) {
      const SimulationConfig cfg = to_config(sim);
      json doc;
      if (cfg.dim == 4) {
        const auto r = estimate_separability(cfg);
        doc = to_json(r);
        doc["manifest"] = manifest("simulate", args, since(t0), r.per_worker);
      } else {
        const auto r = determinant_signs(cfg);
        doc = to_json(r);
        doc["manifest"] = manifest("simulate", args, since(t0), r.per_worker);
      }
      doc["config"]["a_text"] = sim.a;
      emit(doc, sim.out, out);
    } else if (*formulas_cmd) {
      if (precision < 20) throw InvalidConfig("precision must be >= 20");
      if (k < 0) throw InvalidConfig("k must be >= 0");
      const auto alpha_q = formulas::parse_rational(alpha);
      formulas::ExactProb p;
      json extra = json::object();
      if (which == "P1") {
        p = formulas::p1(alpha_q, precision);
      } else if (which == "P2") {
        p = formulas::p2(alpha_q, k, precision);
      } else if (which == "Pk4") {
        p = formulas::make_exact(formulas::p_k4(k), precision);
      } else {
        const auto q = formulas::q_k4(k);
        const auto pk = formulas::p_k4(k);
        p = formulas::make_exact(q, precision);
        const formulas::Rational ratio = (pk - q) / pk;
        extra["ordering_ratio_exact"] = formulas::to_string(ratio);
        extra["ordering_ratio_decimal"] = formulas::to_decimal(ratio, precision);
      }
      json doc = to_json(p);
      doc["which"] = which;
      doc["alpha"] = formulas::to_string(alpha_q);
      doc["k"] = k;
      for (auto& [key, v] : extra.items()) doc[key] = v;
      doc["manifest"] = manifest("formulas", args, since(t0), {});
      emit(doc, fout, out);
    } else if (*sweep_cmd) {
      const auto grid = parse_grid(grid_text);
      SimulationConfig cfg = to_config(sw);
      const auto r = sweep(grid, cfg);
      json doc = to_json(r);
      doc["config"] = to_json(cfg);
      doc["manifest"] = manifest("sweep", args, since(t0), sweep_worker_totals(r));
      const std::string csv = sweep_csv(r);
      std::string csv_target = csv_path;
      if (csv_target.empty() && !sw.out.empty()) csv_target = sw.out + ".csv";
      doc["csv"] = csv_target.empty() ? json(csv) : json(csv_target);
      if (!csv_target.empty()) write_text(csv, csv_target);
      emit(doc, sw.out, out);
    } else if (*calibrate) {
      const auto ks = parse_k_list(k_list);
      SweepResult r;
      json sweep_doc;
      if (!from_path.empty()) {
        std::ifstream f(from_path);
        if (!f) throw InvalidConfig("cannot read '" + from_path + "'");
        json j;
        try {
          j = json::parse(f);
        } catch (const json::exception& e) {
          throw InvalidConfig(std::string("cannot parse '") + from_path + "': " + e.what());
        }
        r = sweep_from_json(j);
        sweep_doc = {{"from", from_path}};
      } else {
        if (cal_grid.empty()) throw InvalidConfig("calibrate needs --a-grid or --from");
        r = sweep(parse_grid(cal_grid), to_config(cal));
        sweep_doc = to_json(r);
      }
      const auto map = fit_a_of_k(ks, r);
      json doc = to_json(map);
      doc["sweep"] = sweep_doc;
      doc["sweep_extrapolated_at_zero"] = r.at_zero;
      doc["manifest"] = manifest("calibrate", args, since(t0), sweep_worker_totals(r));
      emit(doc, cal.out, out);
    } else if (*eigcheck) {
      const auto rep = eigen_pdf_check(eig_n, eig_samples, eig_seed, eig_bins, eig_workers);
      json doc = to_json(rep);
      doc["threshold"] = 0.02;
      doc["manifest"] = manifest("eigcheck", args, since(t0), {});
      emit(doc, eig_out, out);
    } else if (*forrester3) {
      if (f3.dim != 3) throw InvalidConfig("forrester3 uses dim 3");
      const SimulationConfig cfg = to_config(f3);
      const auto r = forrester_3x3_mode(cfg.a, cfg.gamma_variant, cfg.samples, cfg.seed, cfg.workers);
      json doc = to_json(r);
      doc["config"]["a_text"] = f3.a;
      doc["manifest"] = manifest("forrester3", args, since(t0), r.per_worker);
      emit(doc, f3.out, out);
    }
  } catch (const ImaginaryResidualExceeded& e) {
    json j = {{"error", "ImaginaryResidualExceeded"},
              {"message", e.what()},
              {"residual", e.residual()},
              {"real_part", e.real_part()}};
    if (e.has_provenance()) j["provenance"] = {{"seed", e.seed()}, {"stream", e.stream()}};
    err << j.dump() << '\n';
    return kImaginaryResidual;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const InvalidShape& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace octosep::cli
