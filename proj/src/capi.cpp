#include "levitrap/levitrap.h"

#include <exception>
#include <new>
#include <optional>
#include <string>

#include "levitrap/config.hpp"
#include "levitrap/error.hpp"
#include "levitrap/materials.hpp"
#include "levitrap/polarizability.hpp"
#include "levitrap/scenarios.hpp"
#include "levitrap/thermal.hpp"

struct lt_scenario {
  std::string name;
  levitrap::config::Config config;
  int jobs = 1;
  std::optional<levitrap::scenarios::ScenarioResult> result;
  std::string text;
};

namespace {

thread_local std::string last_error;

lt_status status_of(levitrap::ErrorCode code) {
  using levitrap::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return LT_INVALID_ARGUMENT;
    case ErrorCode::out_of_range: return LT_OUT_OF_RANGE;
    case ErrorCode::singular: return LT_SINGULAR;
    case ErrorCode::no_trap: return LT_NO_TRAP;
    case ErrorCode::convergence: return LT_CONVERGENCE;
    case ErrorCode::unbounded_heating: return LT_UNBOUNDED_HEATING;
    case ErrorCode::config: return LT_CONFIG;
    case ErrorCode::io: return LT_IO;
  }
  return LT_INTERNAL;
}

lt_status fail_with(lt_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class F>
lt_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return LT_OK;
  } catch (const levitrap::Error& e) {
    return fail_with(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(LT_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail_with(LT_INTERNAL, e.what());
  } catch (...) {
    return fail_with(LT_INTERNAL, "unknown failure");
  }
}

}  // namespace

extern "C" {

const char* lt_version(void) { return "0.1.0"; }

const char* lt_status_string(lt_status status) {
  switch (status) {
    case LT_OK: return "ok";
    case LT_INVALID_ARGUMENT: return "invalid argument";
    case LT_OUT_OF_RANGE: return "out of range";
    case LT_SINGULAR: return "singular";
    case LT_NO_TRAP: return "no trap";
    case LT_CONVERGENCE: return "convergence failure";
    case LT_UNBOUNDED_HEATING: return "unbounded heating";
    case LT_CONFIG: return "configuration error";
    case LT_IO: return "i/o error";
    case LT_UNKNOWN_SCENARIO: return "unknown scenario";
    case LT_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* lt_last_error(void) { return last_error.c_str(); }

size_t lt_scenario_count(void) { return levitrap::config::preset_names().size(); }

const char* lt_scenario_name(size_t index) {
  static const auto names = levitrap::config::preset_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

lt_status lt_scenario_create(const char* name, lt_scenario** out) {
  if (!name || !out) return fail_with(LT_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (!levitrap::config::has_preset(name)) {
    return fail_with(LT_UNKNOWN_SCENARIO, std::string("unknown scenario '") + name + "'");
  }
  return guarded([&] {
    auto handle = new lt_scenario;
    handle->name = name;
    handle->config = levitrap::config::preset(name);
    *out = handle;
  });
}

void lt_scenario_destroy(lt_scenario* scenario) { delete scenario; }

lt_status lt_scenario_load_config(lt_scenario* scenario, const char* text) {
  if (!scenario || !text) return fail_with(LT_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    scenario->config.merge(levitrap::config::Config::parse(text, "config"));
    scenario->result.reset();
  });
}

lt_status lt_scenario_set(lt_scenario* scenario, const char* key, const char* value) {
  if (!scenario || !key || !value) return fail_with(LT_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    scenario->config.set(key, value);
    scenario->result.reset();
  });
}

lt_status lt_scenario_set_jobs(lt_scenario* scenario, int jobs) {
  if (!scenario) return fail_with(LT_INVALID_ARGUMENT, "null argument");
  if (jobs < 1) return fail_with(LT_INVALID_ARGUMENT, "jobs must be >= 1");
  scenario->jobs = jobs;
  return LT_OK;
}

lt_status lt_scenario_run(lt_scenario* scenario) {
  if (!scenario) return fail_with(LT_INVALID_ARGUMENT, "null argument");
  scenario->result.reset();
  return guarded([&] {
    scenario->result = levitrap::scenarios::run(scenario->config, scenario->jobs);
  });
}

lt_status lt_scenario_output(lt_scenario* scenario, lt_output_kind kind, const char** text,
                             size_t* length) {
  if (!scenario || !text) return fail_with(LT_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    namespace sc = levitrap::scenarios;
    if (kind == LT_OUTPUT_CONFIG) {
      scenario->text = scenario->config.dump();
    } else {
      if (!scenario->result) levitrap::fail(levitrap::ErrorCode::invalid_argument, "scenario has not run");
      const auto& r = *scenario->result;
      switch (kind) {
        case LT_OUTPUT_CSV: scenario->text = levitrap::table::to_csv(r.table); break;
        case LT_OUTPUT_SIDECAR: scenario->text = sc::sidecar(r); break;
        case LT_OUTPUT_JSON: scenario->text = sc::document(r).dump(2) + "\n"; break;
        default: levitrap::fail(levitrap::ErrorCode::invalid_argument, "unknown output kind");
      }
    }
    *text = scenario->text.c_str();
    if (length) *length = scenario->text.size();
  });
}

lt_status lt_siv_transition(double temperature, double* omega0) {
  if (!omega0) return fail_with(LT_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *omega0 = levitrap::materials::siv_transition(temperature); });
}

lt_status lt_siv_linewidth(double temperature, double* gamma_natural) {
  if (!gamma_natural) return fail_with(LT_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *gamma_natural = levitrap::materials::siv_linewidth(temperature); });
}

lt_status lt_siv_dephasing(double temperature, double* gamma_transverse) {
  if (!gamma_transverse) return fail_with(LT_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *gamma_transverse = levitrap::materials::siv_dephasing(temperature); });
}

lt_status lt_quantum_polarizability(double detuning, double rabi, double linewidth,
                                    double transverse_decay, double dipole, double* alpha) {
  if (!alpha) return fail_with(LT_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *alpha = levitrap::polarizability::quantum_polarizability(
        {detuning, rabi, linewidth, transverse_decay}, dipole);
  });
}

lt_status lt_steady_state_temperature(double radius, double environment_temperature,
                                      double intensity, double omega, double* temperature) {
  if (!temperature) return fail_with(LT_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto sphere = levitrap::materials::nanodiamond_siv(radius);
    *temperature = levitrap::thermal::steady_state_temperature(
        sphere, levitrap::thermal::ThermalEnvironment::single_beam(environment_temperature,
                                                                   intensity, omega));
  });
}

}  // extern "C"
