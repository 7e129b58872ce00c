#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>

namespace levitrap::materials {

// Temperature-dependent fits for the silicon-vacancy zero-phonon line.
// Valid for T in [0, 3000] K; outside that range Error(out_of_range).
double siv_wavelength(double temperature);   // m
double siv_transition(double temperature);   // rad/s
double siv_linewidth(double temperature);    // Gamma, rad/s
double siv_dephasing(double temperature);    // gamma (transverse decay), rad/s

// Dipole moment inferred from the free-space rate Gamma_0 = Gamma / n.
double siv_dipole_moment(double temperature, double host_index);

struct EmitterSpec {
  std::function<double(double)> transition_frequency;
  std::function<double(double)> natural_linewidth;
  std::function<double(double)> transverse_decay;
  double host_index = 2.4;
  double density = 0.0;  // emitters per m^3

  double dipole_moment(double temperature) const;
  // gamma - Gamma/2. Negative below ~12 K for the SiV fits.
  double pure_dephasing(double temperature) const;
};

EmitterSpec siv_emitter(double density, double host_index = 2.4);

// Im[n] of diamond, omega > 0. Never below the 1e-8 floor.
double diamond_extinction(double omega);

struct SphereSpec {
  double radius = 0.0;
  double refractive_index_real = 1.0;
  std::function<double(double)> extinction;  // omega -> Im[n]
  double mass_density = 0.0;                  // kg/m^3
  double specific_heat = 0.0;                 // J/(kg K)
  EmitterSpec emitter;

  double volume() const;
  double mass() const;
  double emitter_count() const;
  std::complex<double> permittivity(double omega) const;
  // Im[(eps - 1)/(eps + 2)] at omega.
  double absorption_factor(double omega) const;
  // (n^2 - 1)/(n^2 + 2) with the real index.
  double clausius_mossotti() const;
  double local_field_factor() const;
};

inline constexpr double diamond_mass_density = 3515.0;
inline constexpr double diamond_specific_heat = 509.0;

SphereSpec nanodiamond_siv(double radius = 15e-9, double emitter_density = 1.4e27);

// Dielectric response of a half space on the imaginary frequency axis.
struct HalfSpaceOptics {
  std::string name;
  std::function<double(double)> epsilon_imag_axis;
};

// Three-term Sellmeier (Malitson coefficients) continued to omega = i x.
double silica_epsilon_imag_axis(double x);
HalfSpaceOptics silica_half_space();
HalfSpaceOptics vacuum_half_space();

SphereSpec sphere_preset(std::string_view name);
HalfSpaceOptics half_space_preset(std::string_view name);

}  // namespace levitrap::materials
