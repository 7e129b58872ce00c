#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "levitrap/casimir.hpp"
#include "levitrap/constants.hpp"
#include "levitrap/fields.hpp"
#include "levitrap/materials.hpp"
#include "levitrap/thermal.hpp"

namespace levitrap::trap {

enum class ForceModel {
  floquet,       // full Floquet solution for a symmetric red/blue pair
  lowest_order,  // N = 0 closed form, joint saturation over all modes
  independent,   // each mode saturates on its own
};

std::string_view force_model_name(ForceModel model);
ForceModel parse_force_model(std::string_view name);

// z is the distance from the fiber surface to the sphere centre; the cavity
// surface (if any) sits at z = gap.
struct TrapConfiguration {
  materials::SphereSpec sphere = materials::nanodiamond_siv();
  std::vector<fields::EvanescentMode> modes;
  double gap = std::numeric_limits<double>::infinity();
  double far_distance = 3e-6;  // profile end when there is no cavity
  double environment_temperature = 300.0;
  double gravity = constants::standard_gravity;  // signed acceleration along +z
  materials::HalfSpaceOptics fiber_surface = materials::silica_half_space();
  materials::HalfSpaceOptics cavity_surface = materials::silica_half_space();
  bool include_casimir = true;
  bool include_quantum = true;
  ForceModel force_model = ForceModel::floquet;
  // Internal temperature held fixed instead of solving the heat balance when > 0.
  double fixed_temperature = 0.0;
  double cutoff_tolerance = 1e-9;
  double grid_step = 0.5e-9;
  int max_iterations = 50;
  double damping = 0.5;
  double position_tolerance = 0.1e-9;
  double temperature_tolerance = 0.5;
  int jobs = 1;
};

void validate(const TrapConfiguration& config);

struct ForceBreakdown {
  double quantum = 0.0;  // N F_q
  double bulk = 0.0;
  double casimir = 0.0;
  double gravity = 0.0;
  double total = 0.0;
  double excited_population = 0.0;
  int cutoff = 0;
};

// Configuration frozen at one internal temperature.
class TrapModel {
 public:
  TrapModel(const TrapConfiguration& config, double internal_temperature);

  ForceBreakdown force(double z) const;
  double total_force(double z) const { return force(z).total; }

  // Closed-form parts of the potential (J).
  double bulk_potential(double z) const;
  double casimir_potential(double z) const;
  double gravity_potential(double z) const;

  double z_min() const { return z_min_; }
  double z_max() const { return z_max_; }
  double temperature() const { return temperature_; }
  const TrapConfiguration& config() const { return config_; }
  ForceModel effective_model() const { return model_; }

  double transition_frequency() const { return omega0_; }
  double linewidth() const { return linewidth_; }
  double transverse_decay() const { return decay_; }
  double dipole() const { return dipole_; }
  double emitter_count() const { return emitters_; }
  double mass() const { return mass_; }

  double rabi(std::size_t mode, double z) const;
  double field_squared(std::size_t mode, double z) const;  // E0^2 at the sphere
  // Local intensities of every mode at z, at their absolute frequencies.
  thermal::ThermalEnvironment illumination_at(double z) const;

 private:
  double quantum_force(double z, double& excited, int& cutoff) const;

  TrapConfiguration config_;
  double temperature_;
  double omega0_, linewidth_, decay_, dipole_, emitters_, mass_, local_field_, alpha_s_;
  double z_min_, z_max_;
  ForceModel model_;
  std::size_t red_ = 0, blue_ = 1;
  std::optional<casimir::EmitterCasimirTable> fiber_emitter_, cavity_emitter_;
  const casimir::CasimirProfile* fiber_sphere_ = nullptr;
  const casimir::CasimirProfile* cavity_sphere_ = nullptr;
};

struct PotentialProfile {
  std::vector<double> z;
  std::vector<double> total, quantum, bulk, casimir, gravity;  // J, anchored at the far end
  std::vector<double> force;                                   // N
};

// Quantum part integrated with Simpson's rule between grid nodes (one extra
// midpoint force evaluation per interval).
PotentialProfile potential_profile(const TrapModel& model, std::span<const double> z_grid,
                                   int jobs = 1);
std::vector<double> uniform_grid(const TrapModel& model);

struct Equilibrium {
  double z = 0.0;
  double potential = 0.0;        // J, same anchoring as the profile
  double near_barrier = 0.0;     // J above the minimum, toward the fiber
  double far_barrier = 0.0;      // J above the minimum, toward the far side/cavity
  double depth = 0.0;            // J
};

// Every stable root (F changes from + to -) on the profile, refined.
std::vector<Equilibrium> stable_equilibria(const TrapModel& model, const PotentialProfile& profile);

double trap_frequency(const TrapModel& model, double z_t);

struct TrapReport {
  double position = 0.0;            // z_t, m
  double depth = 0.0;               // K
  double near_barrier = 0.0;        // K
  double far_barrier = 0.0;         // K
  double frequency = 0.0;           // omega_t, rad/s
  double zero_point = 0.0;          // z_zp, m
  double internal_temperature = 0.0;
  double excited_population = 0.0;
  double residual_force = 0.0;      // N
  int iterations = 0;
  int cutoff = 0;
  ForceModel force_model = ForceModel::floquet;
  std::vector<std::string> diagnostics;
};

// Self-consistent equilibrium: T_i is re-solved from the local intensities at
// z_t each pass (damped fixed point). Error(no_trap) without a stable root,
// Error(convergence) when the loop does not settle.
TrapReport find_equilibrium(const TrapConfiguration& config);

// Same analysis at a fixed internal temperature.
TrapReport analyze(const TrapModel& model);

}  // namespace levitrap::trap
