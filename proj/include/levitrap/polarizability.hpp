#pragma once

#include <complex>

namespace levitrap::polarizability {

struct PolarizabilityContext {
  double detuning = 0.0;           // Delta = omega - omega0, rad/s
  double rabi_frequency = 0.0;     // Omega, rad/s
  double natural_linewidth = 0.0;  // Gamma, rad/s
  double transverse_decay = 0.0;   // gamma, rad/s
};

// 3 eps0 V (n^2 - 1)/(n^2 + 2), F m^2.
double bulk_polarizability(double radius, double n);

// s = Omega^2 / (gamma Gamma (1 + Delta^2/gamma^2)).
double saturation(const PolarizabilityContext& ctx);

// Dispersive (real) part of the saturated emitter polarizability.
// Written without the Omega^2 in the denominator, so Omega = 0 is fine.
double quantum_polarizability(const PolarizabilityContext& ctx, double dipole);

// Same, with the absorptive part: -(2 d^2/3 hbar) (Delta - i gamma) / ((gamma^2 + Delta^2)(1 + s)).
std::complex<double> complex_quantum_polarizability(const PolarizabilityContext& ctx,
                                                    double dipole);

// |Delta| maximising |alpha_q| at fixed Omega.
double optimal_detuning(double rabi, double gamma, double Gamma);

// alpha_q / alpha_s at the optimal detuning (ctx.detuning is ignored).
double ratio_eta(double radius, double n, double wavelength, const PolarizabilityContext& ctx);

// Inverts rho alpha / (3 eps0) = (nbar^2 - 1)/(nbar^2 + 2) for nbar (Re >= 0 branch).
std::complex<double> effective_index(double density, std::complex<double> alpha);

double local_field_factor(double n);

// Orientation-averaged Rabi frequency for a plane-wave intensity (W/m^2):
// Omega = sqrt(2) (d/sqrt(3)) E0 / hbar * local_field, E0 = sqrt(2 I/(eps0 c)).
double rabi_from_intensity(double intensity, double dipole, double local_field = 1.0);
double rabi_from_amplitude(double amplitude, double dipole, double local_field = 1.0);

}  // namespace levitrap::polarizability
