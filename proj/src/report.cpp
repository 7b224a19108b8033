#include "octosep/report.hpp"

#include <iomanip>
#include <sstream>

#include "octosep/errors.hpp"

namespace octosep {

using nlohmann::json;

json to_json(const SimulationConfig& cfg) {
  return {{"a", cfg.a},
          {"gamma_variant", std::string(to_string(cfg.gamma_variant))},
          {"dim", cfg.dim},
          {"samples", cfg.samples},
          {"seed", cfg.seed},
          {"workers", cfg.workers},
          {"minor_mode", std::string(to_string(cfg.minor_mode))}};
}

SimulationConfig config_from_json(const json& j) {
  try {
    SimulationConfig cfg;
    cfg.a = j.at("a").get<double>();
    cfg.gamma_variant = parse_gamma_variant(j.at("gamma_variant").get<std::string>());
    cfg.dim = j.at("dim").get<std::size_t>();
    cfg.samples = j.at("samples").get<std::uint64_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.workers = j.at("workers").get<unsigned>();
    cfg.minor_mode = parse_minor_mode(j.value("minor_mode", std::string("real")));
    return cfg;
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("bad config JSON: ") + e.what());
  }
}

json to_json(const EstimateResult& r) {
  return {{"config", to_json(r.config)},
          {"generated", r.generated},
          {"pos_det", r.pos_det},
          {"ppt", r.ppt},
          {"ordering_count", r.ordering_count},
          {"near_zero_dets", r.near_zero_dets},
          {"sep_prob", r.sep_prob},
          {"sep_stderr", r.sep_stderr},
          {"ordering_prob", r.ordering_prob},
          {"ordering_stderr", r.ordering_stderr},
          {"max_minor_residual", r.max_minor_residual}};
}

json to_json(const DetSignResult& r) {
  return {{"config", to_json(r.config)},
          {"generated", r.generated},
          {"negative", r.negative},
          {"positive", r.positive},
          {"fraction_negative", r.fraction_negative}};
}

json to_json(const EigenPdfReport& r) {
  return {{"n", r.n},
          {"a_implied", r.a_implied},
          {"c", r.c},
          {"samples", r.samples},
          {"seed", r.seed},
          {"bins", r.bins},
          {"grid_max", r.grid_max},
          {"histogram", r.histogram},
          {"overflow", r.overflow},
          {"discrepancy", r.discrepancy}};
}

json to_json(const SweepResult& r) {
  json grid = json::array();
  for (const auto& p : r.grid)
    grid.push_back({{"a", p.a}, {"sep_prob", p.sep_prob}, {"stderr", p.stderr_},
                    {"estimate", to_json(p.estimate)}});
  json interp = {{"kind", "monotone_cubic_hermite"},
                 {"knots", r.interpolant.knots()},
                 {"values", r.interpolant.values()},
                 {"slopes", r.interpolant.slopes()}};
  return {{"grid", grid},
          {"interpolant", interp},
          {"extrapolated_at_zero", r.at_zero},
          {"at_zero_out_of_range", r.at_zero_extrapolated},
          {"reference_at_zero", kReferenceSweepAtZero},
          {"conjecture", kConjecturedProbability},
          {"nearest_to_conjecture",
           r.grid.empty() ? json(nullptr)
                          : json{{"index", r.nearest_to_conjecture},
                                 {"a", r.grid[r.nearest_to_conjecture].a},
                                 {"sep_prob", r.grid[r.nearest_to_conjecture].sep_prob}}}};
}

SweepResult sweep_from_json(const json& j) {
  try {
    SweepResult r;
    std::vector<double> xs, ys;
    for (const auto& p : j.at("grid")) {
      GridPoint g;
      g.a = p.at("a").get<double>();
      g.sep_prob = p.at("sep_prob").get<double>();
      g.stderr_ = p.at("stderr").get<double>();
      xs.push_back(g.a);
      ys.push_back(g.sep_prob);
      r.grid.push_back(g);
    }
    r.interpolant = MonotoneCubic(xs, ys);
    r.at_zero = r.interpolant(0.0);
    r.at_zero_extrapolated = !r.interpolant.in_range(0.0);
    return r;
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("bad sweep JSON: ") + e.what());
  }
}

json to_json(const CalibrationMap& m) {
  json pts = json::array();
  for (const auto& p : m.points)
    pts.push_back({{"k", p.k},
                   {"target", p.target},
                   {"a_hat", p.a_hat ? json(*p.a_hat) : json(nullptr)},
                   {"extrapolated", p.extrapolated},
                   {"no_bracket", p.extrapolated},
                   {"residual", p.residual}});
  json fit = m.fit.empty() ? json(nullptr)
                           : json{{"kind", "monotone_cubic_hermite"},
                                  {"knots", m.fit.knots()},
                                  {"values", m.fit.values()},
                                  {"slopes", m.fit.slopes()}};
  return {{"points", pts},
          {"fit", fit},
          {"f_at_zero", m.f_at_zero ? json(*m.f_at_zero) : json(nullptr)},
          {"f_at_zero_extrapolated", m.f_at_zero_extrapolated},
          {"reference_f_at_zero", kReferenceF0},
          {"reference_note", "comparison value only; not asserted"}};
}

json to_json(const formulas::ExactProb& p) {
  const unsigned shown = p.digits;
  return {{"value_exact", p.exact ? json(formulas::to_string(*p.exact)) : json(nullptr)},
          {"value_decimal", formulas::to_decimal(p.value, shown)},
          {"form", std::string(formulas::to_string(p.form))},
          {"error_bound", p.error_bound.str(6, std::ios_base::scientific)},
          {"recognized_rational",
           p.recognized ? json(formulas::to_string(*p.recognized)) : json(nullptr)},
          {"terms", p.terms},
          {"precision", p.digits}};
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "a,sep_prob,stderr\n" << std::setprecision(17);
  for (const auto& p : r.grid) os << p.a << ',' << p.sep_prob << ',' << p.stderr_ << '\n';
  return os.str();
}

}  // namespace octosep
