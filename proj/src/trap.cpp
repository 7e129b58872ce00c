#include "levitrap/trap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "detail/parallel.hpp"
#include "levitrap/error.hpp"
#include "levitrap/floquet.hpp"
#include "levitrap/polarizability.hpp"

namespace levitrap::trap {

using namespace levitrap::constants;
using fields::Surface;

std::string_view force_model_name(ForceModel model) {
  switch (model) {
    case ForceModel::floquet: return "floquet";
    case ForceModel::lowest_order: return "lowest-order";
    case ForceModel::independent: return "independent";
  }
  return "unknown";
}

ForceModel parse_force_model(std::string_view name) {
  if (name == "floquet") return ForceModel::floquet;
  if (name == "lowest-order") return ForceModel::lowest_order;
  if (name == "independent") return ForceModel::independent;
  fail(ErrorCode::invalid_argument, "unknown force model '" + std::string(name) + "'");
}

void validate(const TrapConfiguration& c) {
  if (!(c.sphere.radius > 0.0)) fail(ErrorCode::invalid_argument, "sphere radius must be > 0");
  if (!(c.sphere.mass() > 0.0)) fail(ErrorCode::invalid_argument, "sphere mass must be > 0");
  const bool has_cavity = std::isfinite(c.gap);
  if (has_cavity && !(c.gap > 2.0 * c.sphere.radius)) {
    fail(ErrorCode::invalid_argument, "gap must exceed the sphere diameter");
  }
  if (!has_cavity && !(c.far_distance > 2.0 * c.sphere.radius)) {
    fail(ErrorCode::invalid_argument, "far distance must exceed the sphere diameter");
  }
  for (const auto& mode : c.modes) {
    fields::validate(mode);
    if (mode.surface == Surface::cavity && !has_cavity) {
      fail(ErrorCode::invalid_argument,
           "mode '" + mode.name + "' starts at the cavity but no gap is set");
    }
  }
  if (!(c.environment_temperature > 0.0)) {
    fail(ErrorCode::invalid_argument, "environment temperature must be > 0");
  }
  if (!(c.grid_step > 0.0)) fail(ErrorCode::invalid_argument, "grid step must be > 0");
  if (!(c.damping > 0.0 && c.damping <= 1.0)) {
    fail(ErrorCode::invalid_argument, "damping must lie in (0, 1]");
  }
  if (c.max_iterations < 1) fail(ErrorCode::invalid_argument, "max iterations must be >= 1");
}

TrapModel::TrapModel(const TrapConfiguration& config, double internal_temperature)
    : config_(config), temperature_(internal_temperature) {
  validate(config_);
  const auto& sphere = config_.sphere;
  const auto& emitter = sphere.emitter;
  omega0_ = emitter.transition_frequency(temperature_);
  linewidth_ = emitter.natural_linewidth(temperature_);
  decay_ = emitter.transverse_decay(temperature_);
  dipole_ = emitter.dipole_moment(temperature_);
  emitters_ = sphere.emitter_count();
  mass_ = sphere.mass();
  local_field_ = sphere.local_field_factor();
  alpha_s_ = polarizability::bulk_polarizability(sphere.radius, sphere.refractive_index_real);

  const double radius = sphere.radius;
  const bool has_cavity = std::isfinite(config_.gap);
  z_min_ = radius;
  z_max_ = has_cavity ? config_.gap - radius : config_.far_distance;

  if (config_.include_casimir) {
    const double reach = has_cavity ? config_.gap - radius : z_max_;
    fiber_emitter_.emplace(config_.fiber_surface, radius, reach);
    fiber_sphere_ = &casimir::cached_sphere_profile(config_.fiber_surface, alpha_s_, radius, reach);
    if (has_cavity) {
      cavity_emitter_.emplace(config_.cavity_surface, radius, reach);
      cavity_sphere_ =
          &casimir::cached_sphere_profile(config_.cavity_surface, alpha_s_, radius, reach);
    }
  }

  model_ = config_.force_model;
  if (model_ == ForceModel::floquet) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < config_.modes.size(); ++i) {
      if (config_.modes[i].surface_intensity > 0.0) active.push_back(i);
    }
    bool symmetric = false;
    if (active.size() == 2) {
      const double da = config_.modes[active[0]].detuning;
      const double db = config_.modes[active[1]].detuning;
      symmetric = da != 0.0 && std::abs(da + db) <= 1e-9 * std::abs(da);
      if (symmetric) {
        red_ = da < 0.0 ? active[0] : active[1];
        blue_ = da < 0.0 ? active[1] : active[0];
      }
    }
    if (!symmetric) model_ = ForceModel::lowest_order;
  }
}

double TrapModel::rabi(std::size_t mode, double z) const {
  const auto& m = config_.modes[mode];
  return fields::rabi_at(m, fields::distance_from_surface(m, z, config_.gap), dipole_,
                         local_field_);
}

double TrapModel::field_squared(std::size_t mode, double z) const {
  const auto& m = config_.modes[mode];
  const double e = fields::field_amplitude_at(m, fields::distance_from_surface(m, z, config_.gap));
  return e * e;
}

thermal::ThermalEnvironment TrapModel::illumination_at(double z) const {
  thermal::ThermalEnvironment env;
  env.environment_temperature = config_.environment_temperature;
  for (const auto& m : config_.modes) {
    const double intensity =
        fields::intensity_at(m, fields::distance_from_surface(m, z, config_.gap));
    if (intensity > 0.0) env.beams.push_back({intensity, m.angular_frequency(omega0_)});
  }
  return env;
}

double TrapModel::quantum_force(double z, double& excited, int& cutoff) const {
  excited = 0.0;
  cutoff = 0;
  if (!config_.include_quantum || emitters_ == 0.0 || config_.modes.empty()) return 0.0;

  if (model_ == ForceModel::floquet) {
    const double o1 = rabi(red_, z);
    const double o2 = rabi(blue_, z);
    const floquet::BichromaticDrive drive{o1, o2, config_.modes[blue_].detuning, linewidth_,
                                          decay_};
    const auto sol = floquet::converge_cutoff(drive, config_.cutoff_tolerance);
    excited = floquet::excited_population(sol);
    cutoff = sol.cutoff;
    const double g1 = fields::log_gradient(config_.modes[red_]);
    const double g2 = fields::log_gradient(config_.modes[blue_]);
    return emitters_ * floquet::time_averaged_force(sol, g1 * o1, g2 * o2);
  }

  std::vector<floquet::ModeDrive> drives;
  drives.reserve(config_.modes.size());
  for (std::size_t i = 0; i < config_.modes.size(); ++i) {
    drives.push_back({rabi(i, z), fields::log_gradient(config_.modes[i]),
                      config_.modes[i].detuning});
  }
  excited = floquet::multimode_population(drives, linewidth_, decay_);
  const double f = model_ == ForceModel::independent
                       ? floquet::independent_modes_force(drives, linewidth_, decay_)
                       : floquet::multimode_force(drives, linewidth_, decay_);
  return emitters_ * f;
}

ForceBreakdown TrapModel::force(double z) const {
  ForceBreakdown out;
  out.quantum = quantum_force(z, out.excited_population, out.cutoff);
  for (std::size_t i = 0; i < config_.modes.size(); ++i) {
    out.bulk += 0.5 * alpha_s_ * fields::log_gradient(config_.modes[i]) * field_squared(i, z);
  }
  if (config_.include_casimir) {
    out.casimir = fiber_emitter_->force(z, dipole_, omega0_) * emitters_ + fiber_sphere_->force(z);
    if (cavity_emitter_) {
      const double zc = config_.gap - z;
      out.casimir -= cavity_emitter_->force(zc, dipole_, omega0_) * emitters_ +
                     cavity_sphere_->force(zc);
    }
  }
  out.gravity = mass_ * config_.gravity;
  out.total = out.quantum + out.bulk + out.casimir + out.gravity;
  return out;
}

double TrapModel::bulk_potential(double z) const {
  double e2 = 0.0;
  for (std::size_t i = 0; i < config_.modes.size(); ++i) e2 += field_squared(i, z);
  return -0.25 * alpha_s_ * e2;
}

double TrapModel::casimir_potential(double z) const {
  if (!config_.include_casimir) return 0.0;
  double u = fiber_emitter_->potential(z, dipole_, omega0_) * emitters_ + fiber_sphere_->potential(z);
  if (cavity_emitter_) {
    const double zc = config_.gap - z;
    u += cavity_emitter_->potential(zc, dipole_, omega0_) * emitters_ + cavity_sphere_->potential(zc);
  }
  return u;
}

double TrapModel::gravity_potential(double z) const { return -mass_ * config_.gravity * z; }

std::vector<double> uniform_grid(const TrapModel& model) {
  const double span = model.z_max() - model.z_min();
  const auto intervals =
      static_cast<std::size_t>(std::ceil(span / model.config().grid_step - 1e-9));
  std::vector<double> grid(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    grid[i] = model.z_min() + span * static_cast<double>(i) / static_cast<double>(intervals);
  }
  grid.back() = model.z_max();
  return grid;
}

PotentialProfile potential_profile(const TrapModel& model, std::span<const double> z_grid,
                                   int jobs) {
  const std::size_t n = z_grid.size();
  if (n < 2) fail(ErrorCode::invalid_argument, "profile grid needs at least two points");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(z_grid[i + 1] > z_grid[i])) {
      fail(ErrorCode::invalid_argument, "profile grid must be strictly increasing");
    }
  }
  std::vector<ForceBreakdown> nodes(n), mids(n - 1);
  detail::parallel_for(2 * n - 1, jobs, [&](std::size_t k) {
    if (k < n) {
      nodes[k] = model.force(z_grid[k]);
    } else {
      const std::size_t i = k - n;
      mids[i] = model.force(0.5 * (z_grid[i] + z_grid[i + 1]));
    }
  });

  PotentialProfile p;
  p.z.assign(z_grid.begin(), z_grid.end());
  p.quantum.assign(n, 0.0);
  for (std::size_t i = n - 1; i-- > 0;) {
    const double h = z_grid[i + 1] - z_grid[i];
    const double integral =
        h / 6.0 * (nodes[i].quantum + 4.0 * mids[i].quantum + nodes[i + 1].quantum);
    p.quantum[i] = p.quantum[i + 1] + integral;
  }
  p.bulk.resize(n);
  p.casimir.resize(n);
  p.gravity.resize(n);
  p.total.resize(n);
  p.force.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.bulk[i] = model.bulk_potential(z_grid[i]);
    p.casimir[i] = model.casimir_potential(z_grid[i]);
    p.gravity[i] = model.gravity_potential(z_grid[i]);
    p.total[i] = p.quantum[i] + p.bulk[i] + p.casimir[i] + p.gravity[i];
    p.force[i] = nodes[i].total;
  }
  return p;
}

std::vector<Equilibrium> stable_equilibria(const TrapModel& model, const PotentialProfile& p) {
  std::vector<Equilibrium> out;
  const std::size_t n = p.z.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(p.force[i] > 0.0 && p.force[i + 1] <= 0.0)) continue;
    double z_t = p.z[i + 1];
    if (p.force[i + 1] < 0.0) {
      auto f = [&](double z) { return model.total_force(z); };
      boost::math::tools::eps_tolerance<double> tol(45);
      std::uintmax_t iterations = 100;
      const auto root = boost::math::tools::toms748_solve(f, p.z[i], p.z[i + 1], p.force[i],
                                                          p.force[i + 1], tol, iterations);
      z_t = 0.5 * (root.first + root.second);
    }
    // Quantum potential at z_t from node i with one Simpson panel.
    const double h = z_t - p.z[i];
    double quantum = p.quantum[i];
    if (h > 0.0) {
      const double fa = model.force(p.z[i]).quantum;
      const double fm = model.force(p.z[i] + 0.5 * h).quantum;
      const double fb = model.force(z_t).quantum;
      quantum -= h / 6.0 * (fa + 4.0 * fm + fb);
    }
    Equilibrium e;
    e.z = z_t;
    e.potential = quantum + model.bulk_potential(z_t) + model.casimir_potential(z_t) +
                  model.gravity_potential(z_t);
    const double near = *std::max_element(p.total.begin(), p.total.begin() + i + 1);
    const double far = *std::max_element(p.total.begin() + i + 1, p.total.end());
    e.near_barrier = std::max(0.0, near - e.potential);
    e.far_barrier = std::max(0.0, far - e.potential);
    e.depth = std::min(e.near_barrier, e.far_barrier);
    out.push_back(e);
  }
  return out;
}

double trap_frequency(const TrapModel& model, double z_t) {
  const double h = std::min(0.5e-9, 0.25 * std::min(z_t - model.z_min(), model.z_max() - z_t));
  if (!(h > 0.0)) fail(ErrorCode::invalid_argument, "trap position outside the domain");
  const double stiffness =
      (-model.total_force(z_t + 2 * h) + 8.0 * model.total_force(z_t + h) -
       8.0 * model.total_force(z_t - h) + model.total_force(z_t - 2 * h)) /
      (12.0 * h);
  if (!(stiffness < 0.0)) {
    fail(ErrorCode::no_trap, "force gradient is not restoring at the equilibrium");
  }
  return std::sqrt(-stiffness / model.mass());
}

namespace {

std::string force_dump(const PotentialProfile& p) {
  std::ostringstream out;
  out << "force profile (z nm, F N):";
  const std::size_t n = p.z.size();
  const std::size_t stride = std::max<std::size_t>(1, n / 24);
  char buf[64];
  for (std::size_t i = 0; i < n; i += stride) {
    std::snprintf(buf, sizeof buf, " %.4g:%.4g", p.z[i] * 1e9, p.force[i]);
    out << buf;
  }
  return out.str();
}

bool has_repulsive_mode(const TrapConfiguration& c) {
  return std::any_of(c.modes.begin(), c.modes.end(), [](const fields::EvanescentMode& m) {
    return m.detuning > 0.0 && m.surface_intensity > 0.0;
  });
}

}  // namespace

TrapReport analyze(const TrapModel& model) {
  const auto grid = uniform_grid(model);
  const auto profile = potential_profile(model, grid, model.config().jobs);
  const auto roots = stable_equilibria(model, profile);
  const Equilibrium* best = nullptr;
  for (const auto& r : roots) {
    if (r.depth > 0.0 && (!best || r.depth > best->depth)) best = &r;
  }
  if (!best) {
    std::string why = "no stable equilibrium in (" + std::to_string(model.z_min() * 1e9) + ", " +
                      std::to_string(model.z_max() * 1e9) + ") nm";
    if (!has_repulsive_mode(model.config())) why += "; no blue-detuned mode present";
    fail(ErrorCode::no_trap, why + "; " + force_dump(profile));
  }

  TrapReport report;
  report.position = best->z;
  report.depth = best->depth / boltzmann;
  report.near_barrier = best->near_barrier / boltzmann;
  report.far_barrier = best->far_barrier / boltzmann;
  report.frequency = trap_frequency(model, best->z);
  report.zero_point = std::sqrt(hbar / (2.0 * model.mass() * report.frequency));
  report.internal_temperature = model.temperature();
  const auto f = model.force(best->z);
  report.excited_population = f.excited_population;
  report.residual_force = f.total;
  report.cutoff = f.cutoff;
  report.force_model = model.effective_model();

  const auto& modes = model.config().modes;
  if (model.effective_model() != model.config().force_model) {
    report.diagnostics.push_back("floquet model needs a symmetric red/blue pair; used lowest order");
  }
  if (modes.size() >= 2) {
    double beat = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      for (std::size_t j = i + 1; j < modes.size(); ++j) {
        const double b = fields::beat_frequency(modes[i], modes[j]);
        if (b > 0.0 && (beat == 0.0 || b < beat)) beat = b;
      }
    }
    if (beat > 0.0 && !(beat > 100.0 * report.frequency)) {
      report.diagnostics.push_back("secular approximation marginal: beat <= 100 omega_t");
    }
  }
  if (!(model.transverse_decay() > 100.0 * report.frequency)) {
    report.diagnostics.push_back("Born-Oppenheimer separation marginal: gamma <= 100 omega_t");
  }
  if (!has_repulsive_mode(model.config())) {
    report.diagnostics.push_back("no blue-detuned mode present");
  }
  return report;
}

TrapReport find_equilibrium(const TrapConfiguration& config) {
  validate(config);
  if (config.fixed_temperature > 0.0) {
    return analyze(TrapModel(config, config.fixed_temperature));
  }

  double temperature = config.environment_temperature;
  TrapReport report = analyze(TrapModel(config, temperature));
  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    const TrapModel current(config, temperature);
    const double target = thermal::steady_state_temperature(
        config.sphere, current.illumination_at(report.position));
    const double next_temperature = temperature + config.damping * (target - temperature);
    TrapReport next = analyze(TrapModel(config, next_temperature));
    const double dz = std::abs(next.position - report.position);
    const double dt = std::abs(target - temperature);
    temperature = next_temperature;
    report = std::move(next);
    report.iterations = iteration;
    if (dz < config.position_tolerance && dt < config.temperature_tolerance) return report;
  }
  fail(ErrorCode::convergence,
       "temperature/position loop did not converge in " + std::to_string(config.max_iterations) +
           " iterations (last T = " + std::to_string(temperature) + " K, z = " +
           std::to_string(report.position * 1e9) + " nm)");
}

}  // namespace levitrap::trap
