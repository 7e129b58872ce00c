#include "levitrap/polarizability.hpp"

#include <cmath>

#include "levitrap/constants.hpp"
#include "levitrap/error.hpp"

namespace levitrap::polarizability {

using namespace levitrap::constants;

namespace {

void check_rates(const PolarizabilityContext& ctx) {
  if (!(ctx.natural_linewidth > 0.0) || !(ctx.transverse_decay > 0.0)) {
    fail(ErrorCode::invalid_argument, "polarizability needs Gamma, gamma > 0");
  }
  if (!(ctx.rabi_frequency >= 0.0)) {
    fail(ErrorCode::invalid_argument, "Rabi frequency must be >= 0");
  }
}

// (gamma^2 + Delta^2)(1 + s), expanded so that no division by Omega occurs.
double saturated_denominator(const PolarizabilityContext& ctx) {
  const double g = ctx.transverse_decay;
  return g * g + ctx.detuning * ctx.detuning +
         ctx.rabi_frequency * ctx.rabi_frequency * g / ctx.natural_linewidth;
}

}  // namespace

double bulk_polarizability(double radius, double n) {
  if (!(radius > 0.0) || !(n > 0.0)) {
    fail(ErrorCode::invalid_argument, "bulk polarizability needs R > 0 and n > 0");
  }
  const double volume = 4.0 * pi / 3.0 * radius * radius * radius;
  const double n2 = n * n;
  return 3.0 * epsilon0 * volume * (n2 - 1.0) / (n2 + 2.0);
}

double saturation(const PolarizabilityContext& ctx) {
  check_rates(ctx);
  const double g = ctx.transverse_decay;
  const double ratio = ctx.detuning / g;
  return ctx.rabi_frequency * ctx.rabi_frequency /
         (g * ctx.natural_linewidth * (1.0 + ratio * ratio));
}

double quantum_polarizability(const PolarizabilityContext& ctx, double dipole) {
  check_rates(ctx);
  if (ctx.detuning == 0.0) return 0.0;
  return -2.0 * ctx.detuning * dipole * dipole / (3.0 * hbar * saturated_denominator(ctx));
}

std::complex<double> complex_quantum_polarizability(const PolarizabilityContext& ctx,
                                                    double dipole) {
  check_rates(ctx);
  const std::complex<double> numerator(ctx.detuning, -ctx.transverse_decay);
  return -2.0 * dipole * dipole / (3.0 * hbar) * numerator / saturated_denominator(ctx);
}

double optimal_detuning(double rabi, double gamma, double Gamma) {
  if (!(gamma > 0.0) || !(Gamma > 0.0)) {
    fail(ErrorCode::invalid_argument, "optimal detuning needs gamma, Gamma > 0");
  }
  return gamma * std::sqrt(1.0 + rabi * rabi / (gamma * Gamma));
}

double ratio_eta(double radius, double n, double wavelength, const PolarizabilityContext& ctx) {
  check_rates(ctx);
  if (!(radius > 0.0) || !(n > 1.0) || !(wavelength > 0.0)) {
    fail(ErrorCode::invalid_argument, "ratio_eta needs R > 0, n > 1, lambda > 0");
  }
  const double n2 = n * n;
  const double Gamma = ctx.natural_linewidth;
  const double gamma = ctx.transverse_decay;
  const double omega2 = ctx.rabi_frequency * ctx.rabi_frequency;
  const double size = std::pow(wavelength / radius, 3);
  return size * 2.0 / std::pow(4.0 * pi, 3) * (n2 + 2.0) / (n2 - 1.0) * Gamma / (n * gamma) /
         std::sqrt(1.0 + omega2 / (gamma * Gamma));
}

std::complex<double> effective_index(double density, std::complex<double> alpha) {
  const std::complex<double> x = density * alpha / (3.0 * epsilon0);
  const std::complex<double> denominator = 1.0 - x;
  if (std::abs(denominator) < 1e-12) {
    fail(ErrorCode::singular, "Lorentz-Lorenz pole: rho alpha/(3 eps0) = 1");
  }
  std::complex<double> index = std::sqrt((1.0 + 2.0 * x) / denominator);
  if (index.real() < 0.0) index = -index;
  return index;
}

double local_field_factor(double n) { return (n * n + 2.0) / 3.0; }

double rabi_from_amplitude(double amplitude, double dipole, double local_field) {
  return std::sqrt(2.0) * (dipole / std::sqrt(3.0)) * amplitude / hbar * local_field;
}

double rabi_from_intensity(double intensity, double dipole, double local_field) {
  if (!(intensity >= 0.0)) {
    fail(ErrorCode::invalid_argument, "intensity must be >= 0");
  }
  return rabi_from_amplitude(std::sqrt(2.0 * intensity / (epsilon0 * speed_of_light)), dipole,
                             local_field);
}

}  // namespace levitrap::polarizability
