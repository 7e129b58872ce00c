#pragma once

#include <complex>
#include <span>
#include <vector>

namespace levitrap::floquet {

using complex = std::complex<double>;

// Symmetric bichromatic drive: mode 1 at omega0 - Delta, mode 2 at omega0 + Delta.
struct BichromaticDrive {
  double rabi_1 = 0.0;            // Omega_1
  double rabi_2 = 0.0;            // Omega_2 = Xi * Omega_1
  double detuning = 0.0;          // Delta
  double linewidth = 0.0;         // Gamma
  double transverse_decay = 0.0;  // gamma

  double beat() const { return 2.0 * detuning; }
  double ratio() const;  // Xi; 0 when Omega_1 = 0

  static BichromaticDrive from_ratio(double rabi_1, double ratio, double detuning,
                                     double linewidth, double transverse_decay);
};

void validate(const BichromaticDrive& drive);

struct BlochFourierSolution {
  BichromaticDrive drive;
  int cutoff = 0;
  // w[k] holds harmonic n = k - cutoff; u and v run one order further (n = k - cutoff - 1).
  std::vector<complex> u, v, w;
  double population = 0.0;  // p_e = (w_0 + 1)/2, solved for directly
  bool converged = false;
  double residual = 0.0;  // ||A q - b|| / Gamma with q = w + delta_n0

  complex u_at(int n) const;
  complex v_at(int n) const;
  complex w_at(int n) const;
};

BlochFourierSolution solve_bloch_fourier(const BichromaticDrive& drive, int cutoff);

inline constexpr double default_cutoff_tolerance = 1e-9;
inline constexpr int max_cutoff = 1024;

// Doubles the cutoff (0, 1, 2, 4, ...) until force terms and p_e change by less than tol.
// Returns the smaller of the two agreeing solutions. Error(convergence) past max_cutoff.
BlochFourierSolution converge_cutoff(const BichromaticDrive& drive,
                                     double tol = default_cutoff_tolerance);

// Time-averaged force (N). grad_rabi_i are dOmega_i/dz (rad/(s m)).
double time_averaged_force(const BlochFourierSolution& solution, double grad_rabi_1,
                           double grad_rabi_2);
complex time_averaged_force_complex(const BlochFourierSolution& solution, double grad_rabi_1,
                                    double grad_rabi_2);

// p_e = (w_0 + 1)/2, without the cancellation at weak drive.
double excited_population(const BlochFourierSolution& solution);
// p_e = (i/2 Gamma)[Omega_1 (u_0 - v_0) + Omega_2 (u_-1 - v_1)].
double excited_population_from_coherences(const BlochFourierSolution& solution);

// Lowest-order (N = 0) closed forms for the symmetric pair.
double lowest_order_force(double s1, double s2, double g1, double g2, double detuning,
                          double linewidth, double transverse_decay);
double lowest_order_population(double s1, double s2);

// Per-mode inputs for the general lowest-order force with arbitrary detunings.
struct ModeDrive {
  double rabi = 0.0;          // Omega_i
  double log_gradient = 0.0;  // d log Omega_i / dz
  double detuning = 0.0;      // omega_i - omega0
};

double mode_saturation(const ModeDrive& mode, double linewidth, double transverse_decay);

// Joint saturation: sum_i -hbar Delta_i (Gamma/2gamma) s_i g_i / (1 + sum_j s_j).
double multimode_force(std::span<const ModeDrive> modes, double linewidth,
                       double transverse_decay);
double multimode_population(std::span<const ModeDrive> modes, double linewidth,
                            double transverse_decay);
// Each mode saturates on its own: sum_i -hbar Delta_i (Gamma/2gamma) s_i g_i / (1 + s_i).
double independent_modes_force(std::span<const ModeDrive> modes, double linewidth,
                               double transverse_decay);

}  // namespace levitrap::floquet
