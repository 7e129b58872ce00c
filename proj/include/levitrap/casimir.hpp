#pragma once

#include <functional>
#include <vector>

#include "levitrap/materials.hpp"

namespace levitrap::casimir {

// alpha(i x) in F m^2.
using PolarizabilityFn = std::function<double(double)>;

// 2 d^2 omega0 / (3 hbar (omega0^2 + x^2)).
double alpha_emitter_imag_axis(double x, double dipole, double omega0);
PolarizabilityFn emitter_polarizability(double dipole, double omega0);
// Static 3 eps0 V (n^2 - 1)/(n^2 + 2), frequency independent.
PolarizabilityFn sphere_polarizability(double radius, double n);

struct CasimirInputs {
  double distance = 0.0;  // m, > 0
  materials::HalfSpaceOptics half_space;
  PolarizabilityFn alpha;
};

struct QuadratureOptions {
  double rel_tol = 1e-6;
  double x_max_factor = 1e3;  // outer cut at x = factor * c / z
  int panels_per_decade = 4;
};

// Zero-temperature potential above a half space, J.
double cp_potential(const CasimirInputs& inputs, const QuadratureOptions& options = {});
// -dU/dz, differentiated under the integral sign, N. Negative means attraction.
double cp_force(const CasimirInputs& inputs, const QuadratureOptions& options = {});

// N U_q + U_s.
double cp_total(double distance, double emitter_count, const materials::HalfSpaceOptics& half_space,
                const PolarizabilityFn& emitter, const PolarizabilityFn& sphere);

// U(z) tabulated on a log grid and interpolated with cubic Hermite splines in
// (log z, log|U|), using the exact force as the slope.
class CasimirProfile {
 public:
  CasimirProfile() = default;
  CasimirProfile(PolarizabilityFn alpha, materials::HalfSpaceOptics half_space, double z_min,
                 double z_max, int nodes_per_decade = 12);

  double potential(double distance) const;
  double force(double distance) const;  // -dU/dz
  double z_min() const { return z_min_; }
  double z_max() const { return z_max_; }
  bool empty() const { return log_z_.empty(); }

 private:
  void locate(double distance, std::size_t& index, double& t, double& h) const;

  double z_min_ = 0.0;
  double z_max_ = 0.0;
  bool zero_ = true;
  std::vector<double> log_z_;
  std::vector<double> log_u_;   // log(-U)
  std::vector<double> slope_;   // d log(-U) / d log z
};

}  // namespace levitrap::casimir

namespace levitrap::casimir {

// Emitter potential for any (d, omega0): unit-dipole profiles are built on a
// geometric omega0 grid (step 0.2 %), shared process-wide, and combined by
// three-point Lagrange interpolation in log omega0. U scales exactly as d^2.
class EmitterCasimirTable {
 public:
  EmitterCasimirTable(materials::HalfSpaceOptics half_space, double z_min, double z_max);

  double potential(double distance, double dipole, double omega0) const;
  double force(double distance, double dipole, double omega0) const;

 private:
  struct Stencil {
    const CasimirProfile* profiles[3];
    double weights[3];
  };
  Stencil stencil(double omega0) const;

  materials::HalfSpaceOptics half_space_;
  double z_min_;
  double z_max_;
};

// Sphere (constant alpha) profile from the same process-wide cache.
const CasimirProfile& cached_sphere_profile(const materials::HalfSpaceOptics& half_space,
                                            double alpha, double z_min, double z_max);

}  // namespace levitrap::casimir
