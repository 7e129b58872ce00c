#pragma once

#include <vector>

#include "levitrap/materials.hpp"

namespace levitrap::thermal {

struct Illumination {
  double intensity = 0.0;  // W/m^2
  double frequency = 0.0;  // rad/s
};

struct ThermalEnvironment {
  double environment_temperature = 300.0;
  std::vector<Illumination> beams;

  static ThermalEnvironment single_beam(double environment_temperature, double intensity,
                                        double frequency);
};

// Band used for every blackbody integral: 0.1 - 100 um.
struct Band {
  double omega_min;
  double omega_max;
};
Band blackbody_band();

// Power absorbed from a laser of intensity I at frequency omega, W.
double laser_absorption_rate(const materials::SphereSpec& sphere, double intensity, double omega);

// Spectral densities already weighted by hbar omega': W per (rad/s).
double bb_absorption_density(const materials::SphereSpec& sphere, double omega,
                             double environment_temperature);
double bb_emission_density(const materials::SphereSpec& sphere, double omega,
                           double internal_temperature);

// Emitted photon rate per (rad/s), i.e. gamma_e before the hbar omega' weighting.
double bb_emission_photon_density(const materials::SphereSpec& sphere, double omega,
                                  double internal_temperature);

double bb_absorbed_power(const materials::SphereSpec& sphere, double environment_temperature);
double bb_emitted_power(const materials::SphereSpec& sphere, double internal_temperature);

// dE/dt of the sphere at internal temperature T_i (W). Strictly decreasing in T_i.
double net_power(const materials::SphereSpec& sphere, const ThermalEnvironment& env,
                 double internal_temperature);

inline constexpr double max_temperature = 5000.0;
inline constexpr double temperature_tolerance = 0.01;

// Root of net_power on [T_env, 5000 K]. Error(unbounded_heating) when there is no sign change.
double steady_state_temperature(const materials::SphereSpec& sphere,
                                const ThermalEnvironment& env);

}  // namespace levitrap::thermal
