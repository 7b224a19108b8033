#pragma once

#include <json.hpp>
#include <string>

#include "octosep/calibration.hpp"
#include "octosep/formulas.hpp"
#include "octosep/montecarlo.hpp"

namespace octosep {

inline constexpr const char* kSchemaVersion = "octosep-1";

nlohmann::json to_json(const SimulationConfig& cfg);
SimulationConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EstimateResult& r);
nlohmann::json to_json(const DetSignResult& r);
nlohmann::json to_json(const EigenPdfReport& r);
nlohmann::json to_json(const SweepResult& r);
nlohmann::json to_json(const CalibrationMap& m);
nlohmann::json to_json(const formulas::ExactProb& p);

/// Rebuilds the grid and interpolant of a SweepResult from its JSON form.
SweepResult sweep_from_json(const nlohmann::json& j);

/// "a,sep_prob,stderr" rows with full round-trip precision.
std::string sweep_csv(const SweepResult& r);

}  // namespace octosep
