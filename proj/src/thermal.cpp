#include "levitrap/thermal.hpp"

#include <cmath>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "detail/quadrature.hpp"
#include "levitrap/constants.hpp"
#include "levitrap/error.hpp"

namespace levitrap::thermal {

using namespace levitrap::constants;
using materials::SphereSpec;

namespace {

constexpr int band_panels = 60;
constexpr double band_rel_tol = 1e-8;

double geometric_factor(const SphereSpec& sphere, double omega) {
  const double x = omega * sphere.radius / speed_of_light;
  return 4.0 / pi * x * x * x * sphere.absorption_factor(omega);
}

}  // namespace

ThermalEnvironment ThermalEnvironment::single_beam(double environment_temperature,
                                                   double intensity, double frequency) {
  ThermalEnvironment env;
  env.environment_temperature = environment_temperature;
  env.beams.push_back({intensity, frequency});
  return env;
}

Band blackbody_band() {
  return {two_pi * speed_of_light / 100e-6, two_pi * speed_of_light / 0.1e-6};
}

double laser_absorption_rate(const SphereSpec& sphere, double intensity, double omega) {
  if (!(intensity >= 0.0)) fail(ErrorCode::invalid_argument, "intensity must be >= 0");
  if (intensity == 0.0) return 0.0;
  const double r3 = sphere.radius * sphere.radius * sphere.radius;
  return 4.0 * pi * intensity * omega * r3 / speed_of_light * sphere.absorption_factor(omega);
}

double bb_absorption_density(const SphereSpec& sphere, double omega,
                             double environment_temperature) {
  if (!(environment_temperature > 0.0)) return 0.0;
  const double x = hbar * omega / (boltzmann * environment_temperature);
  return geometric_factor(sphere, omega) / std::expm1(x) * hbar * omega;
}

double bb_emission_photon_density(const SphereSpec& sphere, double omega,
                                  double internal_temperature) {
  if (!(internal_temperature > 0.0)) return 0.0;
  const double x = hbar * omega / (boltzmann * internal_temperature);
  return geometric_factor(sphere, omega) * std::exp(-x);
}

double bb_emission_density(const SphereSpec& sphere, double omega, double internal_temperature) {
  return bb_emission_photon_density(sphere, omega, internal_temperature) * hbar * omega;
}

double bb_absorbed_power(const SphereSpec& sphere, double environment_temperature) {
  if (!(environment_temperature > 0.0)) return 0.0;
  const Band band = blackbody_band();
  return detail::integrate_log_panels(
      [&](double w) { return bb_absorption_density(sphere, w, environment_temperature); },
      band.omega_min, band.omega_max, band_panels, band_rel_tol);
}

double bb_emitted_power(const SphereSpec& sphere, double internal_temperature) {
  if (!(internal_temperature > 0.0)) return 0.0;
  const Band band = blackbody_band();
  return detail::integrate_log_panels(
      [&](double w) { return bb_emission_density(sphere, w, internal_temperature); },
      band.omega_min, band.omega_max, band_panels, band_rel_tol);
}

namespace {

double laser_power(const SphereSpec& sphere, const ThermalEnvironment& env) {
  double total = 0.0;
  for (const auto& beam : env.beams) {
    total += laser_absorption_rate(sphere, beam.intensity, beam.frequency);
  }
  return total;
}

}  // namespace

double net_power(const SphereSpec& sphere, const ThermalEnvironment& env,
                 double internal_temperature) {
  return laser_power(sphere, env) + bb_absorbed_power(sphere, env.environment_temperature) -
         bb_emitted_power(sphere, internal_temperature);
}

double steady_state_temperature(const SphereSpec& sphere, const ThermalEnvironment& env) {
  const double t_env = env.environment_temperature;
  if (!(t_env > 0.0)) fail(ErrorCode::invalid_argument, "environment temperature must be > 0");
  const double heating = laser_power(sphere, env) + bb_absorbed_power(sphere, t_env);
  auto balance = [&](double t) { return heating - bb_emitted_power(sphere, t); };

  double lo = t_env;
  double hi = max_temperature;
  double f_lo = balance(lo);
  if (f_lo < 0.0) {
    // Cannot happen for a passive sphere, but keep the solver total.
    hi = t_env;
    lo = 1.0;
    f_lo = balance(lo);
  }
  const double f_hi = balance(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi > 0.0 || f_lo < 0.0) {
    fail(ErrorCode::unbounded_heating,
         "no thermal steady state below " + std::to_string(max_temperature) +
             " K: absorbed power " + std::to_string(heating) + " W exceeds emission " +
             std::to_string(bb_emitted_power(sphere, max_temperature)) + " W");
  }
  auto close_enough = [](double a, double b) { return std::abs(b - a) < temperature_tolerance; };
  std::uintmax_t iterations = 200;
  const auto bracket = boost::math::tools::bisect(balance, lo, hi, close_enough, iterations);
  return 0.5 * (bracket.first + bracket.second);
}

}  // namespace levitrap::thermal
