#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "levitrap/config.hpp"
#include "levitrap/optomech.hpp"
#include "levitrap/table.hpp"
#include "levitrap/trap.hpp"

namespace levitrap::scenarios {

using Json = nlohmann::ordered_json;

struct ScenarioResult {
  std::string kind;
  table::Table table;
  Json scalars = Json::object();  // sidecar
};

enum class ToleranceKind { relative, factor };

struct GoldenValue {
  std::string quantity;
  double computed = 0.0;
  double reference = 0.0;
  ToleranceKind kind = ToleranceKind::relative;
  double tolerance = 0.0;  // relative half-width, or multiplicative factor
  int criterion = 0;       // acceptance criterion number, 0 when informational

  double deviation() const;  // (computed - reference)/reference
  bool pass() const;
  std::string tolerance_text() const;
};

table::Table golden_table(const std::vector<GoldenValue>& values);
Json golden_json(const std::vector<GoldenValue>& values);

std::vector<std::string> scenario_kinds();

// Dispatches on `scenario.kind`.
ScenarioResult run(const config::Config& config, int jobs = 1);

ScenarioResult run_polarizability_sweep(const config::Config& config, int jobs = 1);
ScenarioResult run_trap_profile(const config::Config& config, int jobs = 1);
ScenarioResult run_sideband_sweep(const config::Config& config, int jobs = 1);
ScenarioResult run_position_sweep(const config::Config& config, int jobs = 1);
ScenarioResult run_fort(const config::Config& config, int jobs = 1);
ScenarioResult run_trap_golden(const config::Config& config, int jobs = 1);
ScenarioResult run_sideband_golden(const config::Config& config, int jobs = 1);
ScenarioResult run_fort_golden(const config::Config& config, int jobs = 1);

// One point of the fig1 intensity sweep: intensity I (W/m^2) with the laser at the optimal detuning.
struct PolarizabilityPoint {
  double intensity = 0.0;
  double internal_temperature = 0.0;
  double rabi = 0.0;
  double detuning = 0.0;
  double saturation = 0.0;
  double eta = 0.0;
  double emitter_count = 0.0;
};
PolarizabilityPoint polarizability_point(const materials::SphereSpec& sphere,
                                         double environment_temperature, double intensity);

struct OperatingPoint {
  trap::TrapReport trap;
  optomech::OptomechReport optomech;
};
OperatingPoint operating_point(const trap::TrapConfiguration& trap_config,
                               const optomech::CavitySpec& cavity);

Json trap_json(const trap::TrapReport& report);
Json optomech_json(const optomech::OptomechReport& report);

// Full JSON document (scalars plus the table) for --format json.
Json document(const ScenarioResult& result);
std::string sidecar(const ScenarioResult& result);

}  // namespace levitrap::scenarios
