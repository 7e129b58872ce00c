#include "levitrap/materials.hpp"

#include <array>
#include <cmath>
#include <string>

#include "levitrap/constants.hpp"
#include "levitrap/error.hpp"

namespace levitrap::materials {

namespace {

using namespace levitrap::constants;

constexpr double fit_max_temperature = 3000.0;

void check_temperature(double temperature) {
  if (!(temperature >= 0.0 && temperature <= fit_max_temperature)) {
    fail(ErrorCode::out_of_range,
         "SiV fit evaluated at T = " + std::to_string(temperature) +
             " K, outside [0, 3000] K");
  }
}

struct SellmeierTerm {
  double strength;
  double wavelength;  // m
};

// Malitson (1965) fused silica.
constexpr std::array<SellmeierTerm, 3> silica_terms{{
    {0.6961663, 0.0684043e-6},
    {0.4079426, 0.1162414e-6},
    {0.8974794, 9.896161e-6},
}};

struct AbsorptionBand {
  double amplitude;
  double center;  // cm^-1
};

constexpr std::array<AbsorptionBand, 3> diamond_bands{{
    {15.0, 2100.0},
    {1.5, 3200.0},
    {0.35, 4400.0},
}};
constexpr double diamond_band_width_sq = 2e5;  // cm^-2
constexpr double diamond_extinction_floor = 1e-8;

}  // namespace

double siv_wavelength(double temperature) {
  check_temperature(temperature);
  return (737.0 + 19.2e-8 * std::pow(temperature, 2.78)) * 1e-9;
}

double siv_transition(double temperature) {
  return two_pi * speed_of_light / siv_wavelength(temperature);
}

double siv_linewidth(double temperature) {
  check_temperature(temperature);
  const double base = two_pi * 1e9 / 9.74;
  if (temperature == 0.0) return base;
  const double activation = 55e-3 * elementary_charge;
  return base * (1.0 + 3.3 * std::exp(-activation / (boltzmann * temperature)));
}

double siv_dephasing(double temperature) {
  check_temperature(temperature);
  return two_pi * 1e6 * (16.39 + 1.9e-2 * temperature * temperature * temperature);
}

double siv_dipole_moment(double temperature, double host_index) {
  if (!(host_index > 0.0)) {
    fail(ErrorCode::invalid_argument, "host index must be positive");
  }
  const double free_space_rate = siv_linewidth(temperature) / host_index;
  const double omega0 = siv_transition(temperature);
  return std::sqrt(3.0 * epsilon0 * pi * hbar * std::pow(speed_of_light, 3) *
                   free_space_rate / std::pow(omega0, 3));
}

double EmitterSpec::dipole_moment(double temperature) const {
  const double free_space_rate = natural_linewidth(temperature) / host_index;
  const double omega0 = transition_frequency(temperature);
  return std::sqrt(3.0 * epsilon0 * pi * hbar * std::pow(speed_of_light, 3) *
                   free_space_rate / std::pow(omega0, 3));
}

double EmitterSpec::pure_dephasing(double temperature) const {
  return transverse_decay(temperature) - 0.5 * natural_linewidth(temperature);
}

EmitterSpec siv_emitter(double density, double host_index) {
  EmitterSpec spec;
  spec.transition_frequency = siv_transition;
  spec.natural_linewidth = siv_linewidth;
  spec.transverse_decay = siv_dephasing;
  spec.host_index = host_index;
  spec.density = density;
  return spec;
}

double diamond_extinction(double omega) {
  if (!(omega > 0.0)) {
    fail(ErrorCode::invalid_argument, "extinction needs omega > 0");
  }
  const double wavenumber = omega / (100.0 * two_pi * speed_of_light);  // cm^-1
  double bands = 0.0;
  for (const auto& band : diamond_bands) {
    const double offset = band.center - wavenumber;
    bands += band.amplitude * std::exp(-offset * offset / diamond_band_width_sq);
  }
  return diamond_extinction_floor + bands / (4.0 * pi * wavenumber);
}

double SphereSpec::volume() const { return 4.0 * pi / 3.0 * radius * radius * radius; }

double SphereSpec::mass() const { return mass_density * volume(); }

double SphereSpec::emitter_count() const { return emitter.density * volume(); }

std::complex<double> SphereSpec::permittivity(double omega) const {
  const std::complex<double> index(refractive_index_real,
                                   extinction ? extinction(omega) : 0.0);
  return index * index;
}

double SphereSpec::absorption_factor(double omega) const {
  const auto eps = permittivity(omega);
  return ((eps - 1.0) / (eps + 2.0)).imag();
}

double SphereSpec::clausius_mossotti() const {
  const double n2 = refractive_index_real * refractive_index_real;
  return (n2 - 1.0) / (n2 + 2.0);
}

double SphereSpec::local_field_factor() const {
  return (refractive_index_real * refractive_index_real + 2.0) / 3.0;
}

SphereSpec nanodiamond_siv(double radius, double emitter_density) {
  SphereSpec sphere;
  sphere.radius = radius;
  sphere.refractive_index_real = 2.4;
  sphere.extinction = diamond_extinction;
  sphere.mass_density = diamond_mass_density;
  sphere.specific_heat = diamond_specific_heat;
  sphere.emitter = siv_emitter(emitter_density, sphere.refractive_index_real);
  return sphere;
}

double silica_epsilon_imag_axis(double x) {
  if (!(x >= 0.0)) {
    fail(ErrorCode::invalid_argument, "imaginary-axis frequency must be >= 0");
  }
  double eps = 1.0;
  for (const auto& term : silica_terms) {
    const double resonance = two_pi * speed_of_light / term.wavelength;
    const double r2 = resonance * resonance;
    eps += term.strength * r2 / (r2 + x * x);
  }
  return eps;
}

HalfSpaceOptics silica_half_space() { return {"silica", silica_epsilon_imag_axis}; }

HalfSpaceOptics vacuum_half_space() {
  return {"vacuum", [](double) { return 1.0; }};
}

SphereSpec sphere_preset(std::string_view name) {
  if (name == "nanodiamond-siv") return nanodiamond_siv();
  fail(ErrorCode::invalid_argument, "unknown sphere material '" + std::string(name) + "'");
}

HalfSpaceOptics half_space_preset(std::string_view name) {
  if (name == "silica") return silica_half_space();
  if (name == "vacuum") return vacuum_half_space();
  fail(ErrorCode::invalid_argument, "unknown half-space material '" + std::string(name) + "'");
}

}  // namespace levitrap::materials
