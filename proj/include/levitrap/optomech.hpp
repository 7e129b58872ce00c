#pragma once

#include <span>
#include <string>
#include <vector>

#include "levitrap/materials.hpp"
#include "levitrap/trap.hpp"

namespace levitrap::optomech {

struct CavitySpec {
  double mode_frequency = 0.0;   // omega_c, rad/s
  double quality_factor = 1e10;
  double mode_volume = 820e-18;  // m^3
  double decay_length = 283e-9;  // 1/Lambda_c, m
  double surface_factor = 0.5;   // xi
  bool local_field = true;       // apply (n^2+2)/3 to the vacuum Rabi frequency
  // Q budget (metadata): radiative, surface-scattering and material quality factors.
  double q_radiative = 2.2e18;
  double q_surface_scattering = 6.6e18;
  double q_material = 9e10;

  double decay_rate() const { return 1.0 / decay_length; }
  double intrinsic_loss() const { return mode_frequency / quality_factor; }
  double budget_quality() const;

  // omega_c = omega0(T_ref) - |Delta_c| (cavity red of the emitter).
  static CavitySpec red_detuned(double reference_transition, double detuning_magnitude);
};

void validate(const CavitySpec& cavity);

// 2 d sqrt(hbar omega_c / (3 V_c eps0)) / hbar, times local_field.
double vacuum_rabi(const CavitySpec& cavity, double dipole, double local_field = 1.0);

// xi^2 Omega_c^2 e^{-2 Lambda_c z'} / (Gamma gamma (1 + Delta_c^2/gamma^2)).
double cavity_saturation(double xi, double decay_rate, double distance, double vacuum_rabi,
                         double detuning, double linewidth, double transverse_decay);

// N (1 - 2 p_e) xi^2 e^{-2 Lambda_c z'} (Omega_c^2 / 2 Delta_c) Lambda_c z_zp.
double single_photon_coupling(double emitters, double excited_population, double xi,
                              double decay_rate, double distance, double vacuum_rabi,
                              double detuning, double zero_point);

// N xi^2 e^{-2 Lambda_c z'} gamma Omega_c^2 / (2 (gamma^2 + Delta_c^2)), i.e. N Gamma s_cav / 2.
double kappa_scattering(double emitters, double xi, double decay_rate, double distance,
                        double vacuum_rabi, double transverse_decay, double detuning,
                        double linewidth);

double kappa_total(const CavitySpec& cavity, double kappa_sc);

double recoil_emitters(double emitters, double omega0, double zero_point, double linewidth,
                       double excited_population);

// One mode: field amplitude squared E_i^2 (V^2/m^2) at frequency omega_i.
double recoil_bulk(double alpha_s, double field_squared, double omega, double zero_point);

double recoil_blackbody(const materials::SphereSpec& sphere, double internal_temperature,
                        double zero_point);

struct OptomechReport {
  double coupling = 0.0;           // g0, rad/s
  double kappa_intrinsic = 0.0;
  double kappa_scattering = 0.0;
  double kappa = 0.0;
  double recoil_emitters = 0.0;    // Gamma_m^q
  double recoil_bulk = 0.0;        // sum over modes of Gamma_m^s
  double recoil_blackbody = 0.0;   // Gamma_m^BB
  double recoil_total = 0.0;       // Gamma_m
  double sideband_ratio = 0.0;     // omega_t / kappa
  double cooperativity = 0.0;
  double cavity_saturation = 0.0;
  double vacuum_rabi = 0.0;
  double cavity_detuning = 0.0;    // omega_c - omega0(T_i)
  double cavity_distance = 0.0;    // z' = D - z_t
  std::vector<std::string> diagnostics;
};

double cooperativity(const OptomechReport& report);

// Figures of merit for the sphere held at `trap_report` inside `config`.
OptomechReport evaluate(const trap::TrapConfiguration& config, const trap::TrapReport& trap_report,
                        const CavitySpec& cavity);

}  // namespace levitrap::optomech
