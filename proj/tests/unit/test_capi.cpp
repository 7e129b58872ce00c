#include <cmath>
#include <algorithm>
#include <cstring>
#include <string>

#include "doctest.h"
#include "levitrap/levitrap.h"

TEST_CASE("version, statuses and presets") {
  CHECK(std::string(lt_version()) == "0.1.0");
  CHECK(std::string(lt_status_string(LT_NO_TRAP)) == "no trap");
  CHECK(lt_scenario_count() == 8);
  CHECK(std::string(lt_scenario_name(0)) == "fig1");
  CHECK(lt_scenario_name(lt_scenario_count()) == nullptr);
}

TEST_CASE("scenario lifecycle") {
  lt_scenario* s = nullptr;
  CHECK(lt_scenario_create("nosuch", &s) == LT_UNKNOWN_SCENARIO);
  CHECK(s == nullptr);
  CHECK(std::strlen(lt_last_error()) > 0);
  REQUIRE(lt_scenario_create("fig1", &s) == LT_OK);
  CHECK(std::strlen(lt_last_error()) == 0);

  const char* text = nullptr;
  size_t length = 0;
  CHECK(lt_scenario_output(s, LT_OUTPUT_CSV, &text, &length) == LT_INVALID_ARGUMENT);
  CHECK(lt_scenario_output(s, LT_OUTPUT_CONFIG, &text, &length) == LT_OK);
  CHECK(std::string(text, length).find("scenario.kind = polarizability-sweep") != std::string::npos);

  CHECK(lt_scenario_set(s, "sweep.count", "5") == LT_OK);
  CHECK(lt_scenario_load_config(s, "sweep.max = 1e9\n") == LT_OK);
  CHECK(lt_scenario_set_jobs(s, 0) == LT_INVALID_ARGUMENT);
  CHECK(lt_scenario_set_jobs(s, 2) == LT_OK);
  REQUIRE(lt_scenario_run(s) == LT_OK);
  CHECK(lt_scenario_output(s, LT_OUTPUT_CSV, &text, &length) == LT_OK);
  const std::string csv(text, length);
  CHECK(csv.rfind("intensity_W_m2,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(lt_scenario_output(s, LT_OUTPUT_SIDECAR, &text, &length) == LT_OK);
  CHECK(std::string(text).find("\"scalars\"") != std::string::npos);
  CHECK(lt_scenario_output(s, LT_OUTPUT_JSON, &text, nullptr) == LT_OK);
  CHECK(std::string(text).find("\"rows\"") != std::string::npos);

  CHECK(lt_scenario_set(s, "nosuch.key", "1") == LT_OK);
  CHECK(lt_scenario_run(s) == LT_CONFIG);
  lt_scenario_destroy(s);
  lt_scenario_destroy(nullptr);
}

TEST_CASE("run failures map to status codes") {
  lt_scenario* s = nullptr;
  REQUIRE(lt_scenario_create("fig2", &s) == LT_OK);
  lt_scenario_set(s, "sphere.emitter_density", "0");
  CHECK(lt_scenario_run(s) == LT_NO_TRAP);
  lt_scenario_set(s, "sphere.emitter_density", "1.4e27");
  lt_scenario_set(s, "trap.max_iterations", "1");
  CHECK(lt_scenario_run(s) == LT_CONVERGENCE);
  lt_scenario_destroy(s);
}

TEST_CASE("scalar entry points") {
  double value = 0.0;
  CHECK(lt_siv_transition(0.0, &value) == LT_OK);
  CHECK(value == doctest::Approx(2.0 * M_PI * 299792458.0 / 737e-9));
  CHECK(lt_siv_linewidth(-5.0, &value) == LT_OUT_OF_RANGE);
  CHECK(lt_siv_dephasing(300.0, nullptr) == LT_INVALID_ARGUMENT);
  CHECK(lt_quantum_polarizability(1e9, 0.0, 1e9, 1e9, 1e-29, &value) == LT_OK);
  CHECK(value < 0.0);
  CHECK(lt_quantum_polarizability(1e9, 0.0, 0.0, 1e9, 1e-29, &value) == LT_INVALID_ARGUMENT);
  double omega = 0.0, T = 0.0;
  lt_siv_transition(300.0, &omega);
  CHECK(lt_steady_state_temperature(15e-9, 300.0, 1e9, omega, &T) == LT_OK);
  CHECK(T > 300.0);
  CHECK(lt_steady_state_temperature(15e-9, 300.0, 1e16, omega, &T) == LT_UNBOUNDED_HEATING);
}
