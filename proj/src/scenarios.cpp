#include "levitrap/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>

#include "detail/parallel.hpp"
#include "levitrap/constants.hpp"
#include "levitrap/error.hpp"
#include "levitrap/polarizability.hpp"
#include "levitrap/thermal.hpp"

namespace levitrap::scenarios {

namespace {

using namespace levitrap::constants;
using table::Cell;
using table::Table;

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

Json number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return table::rounded(value);
}

double kelvin(double joules) { return joules / boltzmann; }

std::string status_of(const Error& e) { return error_code_name(e.code()); }

Json diagnostics_json(const std::vector<std::string>& items) {
  Json out = Json::array();
  for (const auto& d : items) out.push_back(d);
  return out;
}

optomech::CavitySpec require_cavity(const config::Config& c) {
  auto cavity = config::cavity_spec(c);
  if (!cavity) fail(ErrorCode::config, "scenario needs cavity.enabled = true");
  return *cavity;
}

// Red and blue intensities rescaled to a total and a blue fraction.
void set_intensities(trap::TrapConfiguration& tc, double total, double blue_fraction) {
  if (tc.modes.size() != 2) fail(ErrorCode::config, "sweep needs exactly two modes");
  const bool first_blue = tc.modes[0].detuning > 0.0;
  auto& blue = tc.modes[first_blue ? 0 : 1];
  auto& red = tc.modes[first_blue ? 1 : 0];
  blue.surface_intensity = total * blue_fraction;
  red.surface_intensity = total * (1.0 - blue_fraction);
}

double blue_fraction(const trap::TrapConfiguration& tc) {
  if (tc.modes.size() != 2) fail(ErrorCode::config, "sweep needs exactly two modes");
  const double total = tc.modes[0].surface_intensity + tc.modes[1].surface_intensity;
  const auto& blue = tc.modes[0].detuning > 0.0 ? tc.modes[0] : tc.modes[1];
  return blue.surface_intensity / total;
}

// Columns shared by the profile scenarios. Every curve is anchored at the far
// end and shifted by the full curve's value at the trap minimum.
Table profile_table(const trap::PotentialProfile& full, double reference,
                    const std::vector<std::pair<std::string, const trap::PotentialProfile*>>& others) {
  Table t;
  t.columns = {"z_nm", "U_K"};
  for (const auto& [name, _] : others) t.columns.push_back(name);
  for (const char* c : {"U_quantum_K", "U_bulk_K", "U_casimir_K", "U_gravity_K", "force_N"}) {
    t.columns.push_back(c);
  }
  for (std::size_t i = 0; i < full.z.size(); ++i) {
    std::vector<Cell> row{full.z[i] * 1e9, kelvin(full.total[i] - reference)};
    for (const auto& [_, p] : others) row.push_back(kelvin(p->total[i] - reference));
    row.push_back(kelvin(full.quantum[i]));
    row.push_back(kelvin(full.bulk[i]));
    row.push_back(kelvin(full.casimir[i]));
    row.push_back(kelvin(full.gravity[i]));
    row.push_back(full.force[i]);
    t.add_row(std::move(row));
  }
  return t;
}

// Potential of the full curve at the equilibrium reported by the analysis.
double reference_potential(const trap::TrapModel& model, const trap::PotentialProfile& profile,
                           double z_t) {
  const auto eqs = trap::stable_equilibria(model, profile);
  double best = profile.total.back();
  double distance = std::numeric_limits<double>::infinity();
  for (const auto& e : eqs) {
    if (std::abs(e.z - z_t) < distance) {
      distance = std::abs(e.z - z_t);
      best = e.potential;
    }
  }
  return best;
}

bool no_trap_without(trap::TrapConfiguration tc, std::size_t mode) {
  tc.modes[mode].surface_intensity = 0.0;
  try {
    trap::find_equilibrium(tc);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::no_trap) return true;
    throw;
  }
  return false;
}

GoldenValue golden(std::string quantity, double computed, double reference, ToleranceKind kind,
                   double tolerance, int criterion) {
  return {std::move(quantity), computed, reference, kind, tolerance, criterion};
}

ScenarioResult finish_golden(std::string kind, const std::vector<GoldenValue>& values, Json scalars) {
  ScenarioResult r;
  r.kind = std::move(kind);
  r.table = golden_table(values);
  r.scalars = std::move(scalars);
  r.scalars["golden"] = golden_json(values);
  bool all = true;
  for (const auto& v : values) {
    if (v.criterion > 0) all = all && v.pass();
  }
  r.scalars["all_criteria_pass"] = all;
  return r;
}

std::vector<Cell> nan_cells(std::size_t count) { return std::vector<Cell>(count, nan); }

}  // namespace

double GoldenValue::deviation() const {
  if (reference == 0.0) return computed;
  return (computed - reference) / reference;
}

bool GoldenValue::pass() const {
  if (!std::isfinite(computed)) return false;
  if (kind == ToleranceKind::relative) return std::abs(deviation()) <= tolerance;
  if (reference == 0.0 || computed / reference <= 0.0) return false;
  const double ratio = computed / reference;
  return ratio <= tolerance && ratio >= 1.0 / tolerance;
}

std::string GoldenValue::tolerance_text() const {
  char buf[64];
  if (kind == ToleranceKind::relative) {
    std::snprintf(buf, sizeof buf, "+-%g%%", tolerance * 100.0);
  } else {
    std::snprintf(buf, sizeof buf, "x%g", tolerance);
  }
  return buf;
}

Table golden_table(const std::vector<GoldenValue>& values) {
  Table t;
  t.columns = {"quantity", "computed", "reference", "rel_deviation", "tolerance", "criterion",
               "pass"};
  for (const auto& v : values) {
    t.add_row({v.quantity, v.computed, v.reference, v.deviation(), v.tolerance_text(),
               static_cast<double>(v.criterion), std::string(v.pass() ? "true" : "false")});
  }
  return t;
}

Json golden_json(const std::vector<GoldenValue>& values) {
  Json out = Json::array();
  for (const auto& v : values) {
    out.push_back({{"quantity", v.quantity},
                   {"computed", number(v.computed)},
                   {"reference", number(v.reference)},
                   {"rel_deviation", number(v.deviation())},
                   {"tolerance", v.tolerance_text()},
                   {"criterion", v.criterion},
                   {"pass", v.pass()}});
  }
  return out;
}

Json trap_json(const trap::TrapReport& r) {
  return {{"z_t_nm", number(r.position * 1e9)},
          {"depth_K", number(r.depth)},
          {"near_barrier_K", number(r.near_barrier)},
          {"far_barrier_K", number(r.far_barrier)},
          {"omega_t_rad_s", number(r.frequency)},
          {"omega_t_over_2pi_Hz", number(r.frequency / two_pi)},
          {"z_zp_m", number(r.zero_point)},
          {"internal_temperature_K", number(r.internal_temperature)},
          {"excited_population", number(r.excited_population)},
          {"residual_force_N", number(r.residual_force)},
          {"iterations", r.iterations},
          {"floquet_cutoff", r.cutoff},
          {"force_model", std::string(trap::force_model_name(r.force_model))},
          {"diagnostics", diagnostics_json(r.diagnostics)}};
}

Json optomech_json(const optomech::OptomechReport& r) {
  return {{"g0_rad_s", number(r.coupling)},
          {"kappa_intrinsic_rad_s", number(r.kappa_intrinsic)},
          {"kappa_scattering_rad_s", number(r.kappa_scattering)},
          {"kappa_rad_s", number(r.kappa)},
          {"kappa_sc_over_kappa_intrinsic", number(r.kappa_scattering / r.kappa_intrinsic)},
          {"kappa_sc_over_kappa", number(r.kappa_scattering / r.kappa)},
          {"g0_over_kappa", number(r.coupling / r.kappa)},
          {"omega_t_over_kappa", number(r.sideband_ratio)},
          {"cooperativity", number(r.cooperativity)},
          {"Gamma_m_q_over_2pi_Hz", number(r.recoil_emitters / two_pi)},
          {"Gamma_m_s_over_2pi_Hz", number(r.recoil_bulk / two_pi)},
          {"Gamma_m_BB_over_2pi_Hz", number(r.recoil_blackbody / two_pi)},
          {"Gamma_m_over_2pi_Hz", number(r.recoil_total / two_pi)},
          {"cavity_saturation", number(r.cavity_saturation)},
          {"vacuum_rabi_rad_s", number(r.vacuum_rabi)},
          {"cavity_detuning_rad_s", number(r.cavity_detuning)},
          {"cavity_distance_nm", number(r.cavity_distance * 1e9)},
          {"diagnostics", diagnostics_json(r.diagnostics)}};
}

std::vector<std::string> scenario_kinds() {
  return {"polarizability-sweep", "trap-profile", "trap-golden",   "sideband-golden",
          "sideband-sweep",       "position-sweep", "fort-profile", "fort-golden"};
}

ScenarioResult run(const config::Config& c, int jobs) {
  c.validate();
  const auto kind = c.get_string("scenario.kind");
  if (kind == "polarizability-sweep") return run_polarizability_sweep(c, jobs);
  if (kind == "trap-profile") return run_trap_profile(c, jobs);
  if (kind == "trap-golden") return run_trap_golden(c, jobs);
  if (kind == "sideband-golden") return run_sideband_golden(c, jobs);
  if (kind == "sideband-sweep") return run_sideband_sweep(c, jobs);
  if (kind == "position-sweep") return run_position_sweep(c, jobs);
  if (kind == "fort-profile") return run_fort(c, jobs);
  if (kind == "fort-golden") return run_fort_golden(c, jobs);
  fail(ErrorCode::config, "unknown scenario.kind '" + kind + "'");
}

PolarizabilityPoint polarizability_point(const materials::SphereSpec& sphere,
                                         double environment_temperature, double intensity) {
  const auto& em = sphere.emitter;
  const double lf = sphere.local_field_factor();
  PolarizabilityPoint p;
  p.intensity = intensity;
  p.emitter_count = sphere.emitter_count();
  double temperature = environment_temperature;
  auto at = [&](double T) {
    p.rabi = polarizability::rabi_from_intensity(intensity, em.dipole_moment(T), lf);
    p.detuning = polarizability::optimal_detuning(p.rabi, em.transverse_decay(T),
                                                  em.natural_linewidth(T));
  };
  for (int iteration = 0;; ++iteration) {
    if (iteration >= 100) fail(ErrorCode::convergence, "internal temperature did not settle");
    at(temperature);
    const double omega = em.transition_frequency(temperature) + p.detuning;
    const double next = thermal::steady_state_temperature(
        sphere, thermal::ThermalEnvironment::single_beam(environment_temperature, intensity, omega));
    const bool done = std::abs(next - temperature) < thermal::temperature_tolerance;
    temperature = next;
    if (done) break;
  }
  at(temperature);
  p.internal_temperature = temperature;
  const polarizability::PolarizabilityContext ctx{p.detuning, p.rabi,
                                                  em.natural_linewidth(temperature),
                                                  em.transverse_decay(temperature)};
  p.saturation = polarizability::saturation(ctx);
  p.eta = polarizability::ratio_eta(sphere.radius, sphere.refractive_index_real,
                                    materials::siv_wavelength(temperature), ctx);
  return p;
}

ScenarioResult run_polarizability_sweep(const config::Config& c, int jobs) {
  const auto tc = config::trap_configuration(c);
  const auto axis = config::sweep_axis(c);
  if (axis.parameter != "intensity") {
    fail(ErrorCode::config, "polarizability-sweep sweeps 'intensity'");
  }
  const auto values = axis.values();
  std::vector<std::vector<Cell>> rows(values.size());
  detail::parallel_for(values.size(), jobs, [&](std::size_t i) {
    try {
      const auto p = polarizability_point(tc.sphere, tc.environment_temperature, values[i]);
      rows[i] = {p.intensity, p.intensity * 1e-9, p.internal_temperature, p.rabi, p.saturation,
                 p.detuning, p.eta, p.emitter_count * p.eta, std::string("ok")};
    } catch (const Error& e) {
      rows[i] = nan_cells(8);
      rows[i][0] = values[i];
      rows[i][1] = values[i] * 1e-9;
      rows[i].push_back(status_of(e));
    }
  });
  ScenarioResult r;
  r.kind = "polarizability-sweep";
  r.table.columns = {"intensity_W_m2", "intensity_mW_um2", "internal_temperature_K", "rabi_rad_s",
                     "saturation", "optimal_detuning_rad_s", "eta", "N_eta", "status"};
  for (auto& row : rows) r.table.add_row(std::move(row));
  r.scalars["emitter_count"] = number(tc.sphere.emitter_count());
  r.scalars["local_field_factor"] = number(tc.sphere.local_field_factor());
  double peak = 0.0;
  for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
    const double v = r.table.number(i, "N_eta");
    if (std::isfinite(v)) peak = std::max(peak, v);
  }
  r.scalars["max_N_eta"] = number(peak);
  return r;
}

ScenarioResult run_trap_profile(const config::Config& c, int jobs) {
  auto tc = config::trap_configuration(c);
  tc.jobs = jobs;
  const auto report = trap::find_equilibrium(tc);
  const double T = report.internal_temperature;

  const trap::TrapModel full(tc, T);
  const auto grid = trap::uniform_grid(full);
  const auto p_full = trap::potential_profile(full, grid, jobs);

  auto tc_ind = tc;
  tc_ind.force_model = trap::ForceModel::independent;
  const trap::TrapModel independent(tc_ind, T);
  const auto p_ind = trap::potential_profile(independent, grid, jobs);

  auto tc_nocp = tc;
  tc_nocp.include_casimir = false;
  const trap::TrapModel nocp(tc_nocp, T);
  const auto p_nocp = trap::potential_profile(nocp, grid, jobs);

  const double reference = reference_potential(full, p_full, report.position);
  ScenarioResult r;
  r.kind = "trap-profile";
  r.table = profile_table(p_full, reference,
                          {{"U_independent_K", &p_ind}, {"U_no_casimir_K", &p_nocp}});
  r.scalars["trap"] = trap_json(report);
  double max_diff = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    max_diff = std::max(max_diff, std::abs(kelvin(p_full.total[i] - p_ind.total[i])));
  }
  r.scalars["max_abs_full_minus_independent_K"] = number(max_diff);
  try {
    r.scalars["independent_trap"] = trap_json(trap::analyze(independent));
  } catch (const Error& e) {
    r.scalars["independent_trap"] = status_of(e);
  }
  return r;
}

ScenarioResult run_trap_golden(const config::Config& c, int jobs) {
  auto tc = config::trap_configuration(c);
  tc.jobs = jobs;
  Json scalars;
  std::vector<GoldenValue> values;
  bool exists = true;
  trap::TrapReport report;
  try {
    report = trap::find_equilibrium(tc);
    scalars["trap"] = trap_json(report);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::no_trap) throw;
    exists = false;
    report.position = report.depth = report.internal_temperature = nan;
    scalars["trap"] = status_of(e);
  }
  values.push_back(golden("stable_equilibrium_exists", exists ? 1.0 : 0.0, 1.0,
                          ToleranceKind::relative, 0.0, 4));
  values.push_back(golden("z_t_nm", report.position * 1e9, 287.0, ToleranceKind::relative, 0.2, 4));
  values.push_back(golden("depth_K", report.depth, 43.0, ToleranceKind::relative, 0.4, 4));
  values.push_back(golden("internal_temperature_K", report.internal_temperature, 587.0,
                          ToleranceKind::relative, 0.15, 3));

  auto tc_off = tc;
  tc_off.sphere.emitter.density = 0.0;
  bool absent = false;
  try {
    trap::find_equilibrium(tc_off);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::no_trap) throw;
    absent = true;
  }
  values.push_back(golden("no_equilibrium_without_emitters", absent ? 1.0 : 0.0, 1.0,
                          ToleranceKind::relative, 0.0, 4));

  if (c.get_bool("report.sensitivity", false) && tc.modes.size() == 2) {
    const std::vector<double> overlaps{0.5, 0.75, 1.0};
    const std::vector<double> scales{0.5, 1.0, 2.0, 3.0};
    const std::size_t count = overlaps.size() * scales.size();
    std::vector<Json> cells(count);
    detail::parallel_for(count, jobs, [&](std::size_t i) {
      auto t = tc;
      t.jobs = 1;
      const double overlap = overlaps[i / scales.size()];
      const double scale = scales[i % scales.size()];
      for (auto& m : t.modes) {
        m.polarization_overlap = overlap;
        m.surface_intensity *= scale;
      }
      Json cell{{"overlap", overlap}, {"intensity_scale", scale}};
      try {
        const auto rep = trap::find_equilibrium(t);
        cell["z_t_nm"] = number(rep.position * 1e9);
        cell["depth_K"] = number(rep.depth);
        cell["internal_temperature_K"] = number(rep.internal_temperature);
        cell["status"] = "ok";
      } catch (const Error& e) {
        cell["z_t_nm"] = cell["depth_K"] = cell["internal_temperature_K"] = nullptr;
        cell["status"] = status_of(e);
      }
      cells[i] = std::move(cell);
    });
    scalars["sensitivity"] = cells;
  }
  return finish_golden("trap-golden", values, std::move(scalars));
}

OperatingPoint operating_point(const trap::TrapConfiguration& tc,
                               const optomech::CavitySpec& cavity) {
  OperatingPoint p;
  p.trap = trap::find_equilibrium(tc);
  p.optomech = optomech::evaluate(tc, p.trap, cavity);
  return p;
}

ScenarioResult run_sideband_golden(const config::Config& c, int jobs) {
  auto tc = config::trap_configuration(c);
  tc.jobs = jobs;
  const auto cavity = require_cavity(c);
  const auto p = operating_point(tc, cavity);
  const auto& t = p.trap;
  const auto& o = p.optomech;
  using K = ToleranceKind;
  std::vector<GoldenValue> v{
      golden("kappa_sc_over_kappa", o.kappa_scattering / o.kappa, 0.34, K::relative, 0.5, 6),
      golden("g0_over_kappa", o.coupling / o.kappa, 1.2e-3, K::factor, 2.0, 6),
      golden("omega_t_over_kappa", o.sideband_ratio, 4.0, K::relative, 0.5, 6),
      golden("Gamma_m_q_over_2pi_Hz", o.recoil_emitters / two_pi, 42.3e3, K::relative, 0.5, 6),
      golden("Gamma_m_s_over_2pi_Hz", o.recoil_bulk / two_pi, 0.63, K::relative, 0.5, 6),
      golden("kappa_sc_over_kappa_intrinsic", o.kappa_scattering / o.kappa_intrinsic, 0.34, K::relative, 0.5, 0),
      golden("z_t_nm", t.position * 1e9, 288.0, K::relative, 0.2, 0),
      golden("cavity_distance_nm", o.cavity_distance * 1e9, 612.0, K::relative, 0.2, 0),
      golden("depth_K", t.depth, 34.0, K::relative, 0.4, 0),
      golden("internal_temperature_K", t.internal_temperature, 587.0, K::relative, 0.15, 0),
      golden("omega_t_over_2pi_Hz", t.frequency / two_pi, 1e5, K::relative, 0.3, 0),
  };
  Json scalars;
  scalars["trap"] = trap_json(t);
  scalars["optomech"] = optomech_json(o);
  return finish_golden("sideband-golden", v, std::move(scalars));
}

namespace {

const std::vector<std::string> point_columns{
    "z_t_nm",           "cavity_distance_nm", "internal_temperature_K",
    "excited_population", "depth_K",          "omega_t_over_2pi_Hz",
    "omega_t_over_kappa", "g0_over_kappa",    "kappa_sc_over_kappa",
    "kappa_sc_over_kappa_intrinsic", "cooperativity"};

std::vector<Cell> point_cells(const OperatingPoint& p) {
  const auto& t = p.trap;
  const auto& o = p.optomech;
  return {t.position * 1e9,
          o.cavity_distance * 1e9,
          t.internal_temperature,
          t.excited_population,
          t.depth,
          t.frequency / two_pi,
          o.sideband_ratio,
          o.coupling / o.kappa,
          o.kappa_scattering / o.kappa,
          o.kappa_scattering / o.kappa_intrinsic,
          o.cooperativity};
}

}  // namespace

ScenarioResult run_sideband_sweep(const config::Config& c, int jobs) {
  const auto tc = config::trap_configuration(c);
  const auto cavity = require_cavity(c);
  const auto axis = config::sweep_axis(c);
  if (axis.parameter != "total_intensity") {
    fail(ErrorCode::config, "sideband-sweep sweeps 'total_intensity'");
  }
  const double fraction = blue_fraction(tc);
  const auto values = axis.values();
  std::vector<std::vector<Cell>> rows(values.size());
  detail::parallel_for(values.size(), jobs, [&](std::size_t i) {
    auto t = tc;
    t.jobs = 1;
    set_intensities(t, values[i], fraction);
    std::vector<Cell> row{values[i], values[i] * 1e-9};
    try {
      const auto cells = point_cells(operating_point(t, cavity));
      row.insert(row.end(), cells.begin(), cells.end());
      row.push_back(std::string("ok"));
    } catch (const Error& e) {
      const auto cells = nan_cells(point_columns.size());
      row.insert(row.end(), cells.begin(), cells.end());
      row.push_back(status_of(e));
    }
    rows[i] = std::move(row);
  });
  ScenarioResult r;
  r.kind = "sideband-sweep";
  r.table.columns = {"total_intensity_W_m2", "total_intensity_mW_um2"};
  r.table.columns.insert(r.table.columns.end(), point_columns.begin(), point_columns.end());
  r.table.columns.push_back("status");
  for (auto& row : rows) r.table.add_row(std::move(row));

  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  bool resolved = true;
  int ok = 0;
  for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
    const double g = r.table.number(i, "g0_over_kappa");
    if (!std::isfinite(g)) continue;
    ++ok;
    lo = std::min(lo, g);
    hi = std::max(hi, g);
    resolved = resolved && r.table.number(i, "omega_t_over_kappa") >= 1.0;
  }
  r.scalars["blue_fraction"] = number(fraction);
  r.scalars["points_ok"] = ok;
  r.scalars["g0_over_kappa_span"] = ok > 0 ? number(hi / lo) : Json(nullptr);
  r.scalars["resolved_sideband_all"] = ok > 0 && resolved;
  return r;
}

ScenarioResult run_position_sweep(const config::Config& c, int jobs) {
  const auto tc = config::trap_configuration(c);
  const auto cavity = require_cavity(c);
  const auto axis = config::sweep_axis(c);
  if (axis.parameter != "intensity_ratio") {
    fail(ErrorCode::config, "position-sweep sweeps 'intensity_ratio'");
  }
  const double min_total = c.get_number("search.min_total", 2e8);
  const double max_total = c.get_number("search.max_total", 2e10);
  const double tolerance = c.get_number("search.tolerance", 0.01);
  if (!(min_total > 0.0 && max_total > min_total && tolerance > 0.0)) {
    fail(ErrorCode::config, "search needs 0 < min_total < max_total and tolerance > 0");
  }
  const auto values = axis.values();
  std::vector<std::vector<Cell>> rows(values.size());
  detail::parallel_for(values.size(), jobs, [&](std::size_t i) {
    auto t = tc;
    t.jobs = 1;
    std::optional<OperatingPoint> best;
    std::string status = "ok";
    bool lo_trapped = false;  // whether the last failing total still had a trap
    auto resolved = [&](double total) -> bool {
      set_intensities(t, total, values[i]);
      try {
        auto p = operating_point(t, cavity);
        if (p.optomech.sideband_ratio >= 1.0) {
          best = std::move(p);
          return true;
        }
        lo_trapped = true;
        return false;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::no_trap) throw;
        lo_trapped = false;
        return false;
      }
    };
    double found = nan;
    std::string limit = "none";
    try {
      // Resolved only inside a window (no trap below, too hot above): scan
      // upward on a coarse log grid, then bisect the first crossing.
      const int steps = std::max(1, static_cast<int>(std::ceil(4.0 * std::log10(max_total / min_total))));
      double lo = 0.0, hi = 0.0;
      for (int k = 0; k <= steps; ++k) {
        const double total = min_total * std::pow(max_total / min_total, double(k) / steps);
        if (resolved(total)) {
          hi = total;
          break;
        }
        lo = total;
      }
      if (hi == 0.0) {
        status = "no_resolved_sideband";
      } else if (lo == 0.0) {
        found = hi;
        limit = "search_floor";
      } else {
        auto keep = best;
        bool trapped = lo_trapped;
        while (hi / lo - 1.0 > tolerance) {
          const double mid = std::sqrt(lo * hi);
          if (resolved(mid)) {
            hi = mid;
            keep = best;
          } else {
            lo = mid;
            trapped = lo_trapped;
          }
        }
        best = keep;
        found = hi;
        limit = trapped ? "sideband" : "trap_onset";
      }
    } catch (const Error& e) {
      status = status_of(e);
      best.reset();
    }
    std::vector<Cell> row{values[i], found};
    const auto cells = best && std::isfinite(found) ? point_cells(*best)
                                                    : nan_cells(point_columns.size());
    row.insert(row.end(), cells.begin(), cells.end());
    row.push_back(limit);
    row.push_back(status);
    rows[i] = std::move(row);
  });
  ScenarioResult r;
  r.kind = "position-sweep";
  r.table.columns = {"intensity_ratio", "min_total_intensity_W_m2"};
  r.table.columns.insert(r.table.columns.end(), point_columns.begin(), point_columns.end());
  r.table.columns.push_back("limited_by");
  r.table.columns.push_back("status");
  for (auto& row : rows) r.table.add_row(std::move(row));

  bool monotone = true;
  double previous = -1.0;
  for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
    const double z = r.table.number(i, "z_t_nm");
    if (!std::isfinite(z)) continue;
    if (previous >= 0.0 && z < previous) monotone = false;
    previous = z;
  }
  r.scalars["z_t_increases_with_ratio"] = monotone;
  r.scalars["search_tolerance"] = number(tolerance);
  return r;
}

ScenarioResult run_fort(const config::Config& c, int jobs) {
  auto tc = config::trap_configuration(c);
  tc.jobs = jobs;
  const auto report = trap::find_equilibrium(tc);
  const trap::TrapModel full(tc, report.internal_temperature);
  const auto grid = trap::uniform_grid(full);
  const auto p_full = trap::potential_profile(full, grid, jobs);
  auto tc_nocp = tc;
  tc_nocp.include_casimir = false;
  const trap::TrapModel nocp(tc_nocp, report.internal_temperature);
  const auto p_nocp = trap::potential_profile(nocp, grid, jobs);

  ScenarioResult r;
  r.kind = "fort-profile";
  r.table = profile_table(p_full, reference_potential(full, p_full, report.position),
                          {{"U_no_casimir_K", &p_nocp}});
  r.scalars["trap"] = trap_json(report);
  if (const auto cavity = config::cavity_spec(c)) {
    r.scalars["optomech"] = optomech_json(optomech::evaluate(tc, report, *cavity));
  }
  for (std::size_t i = 0; i < tc.modes.size(); ++i) {
    if (tc.modes[i].surface == fields::Surface::cavity) {
      r.scalars["no_trap_without_cavity_mode"] = no_trap_without(tc, i);
    }
  }
  return r;
}

ScenarioResult run_fort_golden(const config::Config& c, int jobs) {
  auto tc = config::trap_configuration(c);
  tc.jobs = jobs;
  const auto cavity = require_cavity(c);
  const auto p = operating_point(tc, cavity);
  const auto& t = p.trap;
  const auto& o = p.optomech;
  using K = ToleranceKind;
  std::vector<GoldenValue> v{
      golden("cooperativity", o.cooperativity, 1.2, K::factor, 3.0, 7),
      golden("excited_population", t.excited_population, 3.2e-5, K::factor, 3.0, 7),
      golden("omega_t_over_kappa", o.sideband_ratio, 1.0, K::relative, 0.3, 7),
      golden("g0_over_kappa", o.coupling / o.kappa, 2.8e-2, K::factor, 3.0, 7),
      golden("Gamma_m_BB_over_2pi_Hz", o.recoil_blackbody / two_pi, 5.8e-7, K::factor, 10.0, 7),
      golden("z_t_nm", t.position * 1e9, 270.0, K::relative, 0.2, 0),
      golden("cavity_distance_nm", o.cavity_distance * 1e9, 295.0, K::relative, 0.2, 0),
      golden("depth_K", t.depth, 10.8, K::relative, 0.4, 0),
      golden("omega_t_over_2pi_Hz", t.frequency / two_pi, 32.7e3, K::relative, 0.3, 0),
      golden("internal_temperature_K", t.internal_temperature, 385.0, K::relative, 0.15, 0),
      golden("kappa_sc_over_kappa", o.kappa_scattering / o.kappa, 0.79, K::relative, 0.3, 0),
      golden("Gamma_m_q_over_2pi_Hz", o.recoil_emitters / two_pi, 15.83, K::relative, 0.5, 0),
      golden("Gamma_m_s_over_2pi_Hz", o.recoil_bulk / two_pi, 76.5e-3, K::relative, 0.5, 0),
  };
  Json scalars;
  scalars["trap"] = trap_json(t);
  scalars["optomech"] = optomech_json(o);
  return finish_golden("fort-golden", v, std::move(scalars));
}

Json document(const ScenarioResult& result) {
  Json doc;
  doc["scenario"] = result.kind;
  doc["scalars"] = result.scalars;
  doc["columns"] = result.table.columns;
  Json rows = Json::array();
  for (const auto& row : result.table.rows) {
    Json out = Json::array();
    for (const auto& cell : row) {
      if (const auto* d = std::get_if<double>(&cell)) {
        out.push_back(number(*d));
      } else {
        out.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(out));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

std::string sidecar(const ScenarioResult& result) {
  Json doc;
  doc["scenario"] = result.kind;
  doc["columns"] = result.table.columns;
  doc["scalars"] = result.scalars;
  return doc.dump(2) + "\n";
}

}  // namespace levitrap::scenarios
