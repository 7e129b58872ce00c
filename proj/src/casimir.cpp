#include "levitrap/casimir.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "detail/quadrature.hpp"
#include "levitrap/constants.hpp"
#include "levitrap/error.hpp"
#include "levitrap/polarizability.hpp"

namespace levitrap::casimir {

using namespace levitrap::constants;

namespace {

constexpr double first_panel_end = 1e-3;  // outer variable y = x z / c
constexpr double inner_rel_tol = 1e-9;

// Bracket of the k-integrand with k = (x/c) p and s = sqrt(eps - 1 + p^2),
// written so that eps = 1 gives exactly zero.
double bracket(double p, double eps) {
  const double em1 = eps - 1.0;
  const double s = std::sqrt(em1 + p * p);
  const double te = -em1 / ((p + s) * (p + s));
  const double tm = (1.0 - 2.0 * p * p) * em1 * ((eps + 1.0) * p * p - 1.0) /
                    ((eps * p + s) * (eps * p + s));
  return te + tm;
}

// With p = 1 + q/(2y): J(y) = int_0^inf e^-q B dq, K(y) = int_0^inf e^-q (y + q/2) B dq.
double inner_potential(double y, double eps) {
  auto f = [&](double q) { return std::exp(-q) * bracket(1.0 + q / (2.0 * y), eps); };
  return detail::integrate_gk(f, 0.0, std::numeric_limits<double>::infinity(), inner_rel_tol);
}

double inner_force(double y, double eps) {
  auto f = [&](double q) {
    return std::exp(-q) * (y + 0.5 * q) * bracket(1.0 + q / (2.0 * y), eps);
  };
  return detail::integrate_gk(f, 0.0, std::numeric_limits<double>::infinity(), inner_rel_tol);
}

template <class Inner>
double outer_integral(const CasimirInputs& in, const QuadratureOptions& opt, Inner inner) {
  const double z = in.distance;
  auto f = [&](double y) {
    if (y == 0.0) return 0.0;
    const double x = speed_of_light * y / z;
    const double eps = in.half_space.epsilon_imag_axis(x);
    if (eps == 1.0) return 0.0;
    return y * y * std::exp(-2.0 * y) * in.alpha(x) * inner(y, eps);
  };
  const double y_max = opt.x_max_factor;
  const int decades = static_cast<int>(std::ceil(std::log10(y_max / first_panel_end)));
  double total = detail::integrate_gk(f, 0.0, first_panel_end, opt.rel_tol);
  total += detail::integrate_log_panels(f, first_panel_end, y_max,
                                        std::max(1, decades * opt.panels_per_decade),
                                        opt.rel_tol);
  return total;
}

void check_inputs(const CasimirInputs& in) {
  if (!(in.distance > 0.0)) {
    fail(ErrorCode::invalid_argument, "Casimir-Polder distance must be > 0");
  }
  if (!in.alpha || !in.half_space.epsilon_imag_axis) {
    fail(ErrorCode::invalid_argument, "Casimir-Polder inputs incomplete");
  }
}

}  // namespace

double alpha_emitter_imag_axis(double x, double dipole, double omega0) {
  return 2.0 * dipole * dipole * omega0 / (3.0 * hbar * (omega0 * omega0 + x * x));
}

PolarizabilityFn emitter_polarizability(double dipole, double omega0) {
  return [dipole, omega0](double x) { return alpha_emitter_imag_axis(x, dipole, omega0); };
}

PolarizabilityFn sphere_polarizability(double radius, double n) {
  const double alpha = polarizability::bulk_polarizability(radius, n);
  return [alpha](double) { return alpha; };
}

double cp_potential(const CasimirInputs& in, const QuadratureOptions& opt) {
  check_inputs(in);
  const double z = in.distance;
  const double prefactor = hbar * speed_of_light / (16.0 * pi * pi * epsilon0 * std::pow(z, 4));
  return prefactor * outer_integral(in, opt, inner_potential);
}

double cp_force(const CasimirInputs& in, const QuadratureOptions& opt) {
  check_inputs(in);
  const double z = in.distance;
  const double prefactor = hbar * speed_of_light / (8.0 * pi * pi * epsilon0 * std::pow(z, 5));
  return prefactor * outer_integral(in, opt, inner_force);
}

double cp_total(double distance, double emitter_count,
                const materials::HalfSpaceOptics& half_space, const PolarizabilityFn& emitter,
                const PolarizabilityFn& sphere) {
  double total = cp_potential({distance, half_space, sphere});
  if (emitter_count != 0.0) {
    total += emitter_count * cp_potential({distance, half_space, emitter});
  }
  return total;
}

CasimirProfile::CasimirProfile(PolarizabilityFn alpha, materials::HalfSpaceOptics half_space,
                               double z_min, double z_max, int nodes_per_decade)
    : z_min_(z_min), z_max_(z_max) {
  if (!(z_min > 0.0) || !(z_max > z_min)) {
    fail(ErrorCode::invalid_argument, "Casimir-Polder profile needs 0 < z_min < z_max");
  }
  const double decades = std::log10(z_max / z_min);
  const int nodes = std::max(4, static_cast<int>(std::ceil(decades * nodes_per_decade)) + 1);
  log_z_.resize(nodes);
  log_u_.resize(nodes);
  slope_.resize(nodes);
  zero_ = false;
  const double a = std::log(z_min);
  const double b = std::log(z_max);
  for (int i = 0; i < nodes; ++i) {
    const double lz = a + (b - a) * i / (nodes - 1);
    const double z = (i + 1 == nodes) ? z_max : std::exp(lz);
    const CasimirInputs in{z, half_space, alpha};
    const double u = cp_potential(in);
    if (u == 0.0) {
      zero_ = true;
      break;
    }
    if (!(u < 0.0)) {
      fail(ErrorCode::invalid_argument,
           "Casimir-Polder profile expects an attractive potential, got U = " +
               std::to_string(u) + " J");
    }
    log_z_[i] = lz;
    log_u_[i] = std::log(-u);
    slope_[i] = -z * cp_force(in) / u;
  }
}

void CasimirProfile::locate(double distance, std::size_t& index, double& t, double& h) const {
  const double lz = std::log(distance);
  auto it = std::upper_bound(log_z_.begin(), log_z_.end(), lz);
  index = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(
      it - log_z_.begin() - 1, 0, static_cast<std::ptrdiff_t>(log_z_.size()) - 2));
  h = log_z_[index + 1] - log_z_[index];
  t = (lz - log_z_[index]) / h;
}

double CasimirProfile::potential(double distance) const {
  if (zero_) return 0.0;
  if (!(distance >= z_min_ * (1.0 - 1e-12))) {
    fail(ErrorCode::out_of_range, "distance below the tabulated Casimir-Polder range");
  }
  if (distance > z_max_) {
    // Power-law tail with the end slope.
    const double lz = std::log(distance);
    return -std::exp(log_u_.back() + slope_.back() * (lz - log_z_.back()));
  }
  std::size_t i;
  double t, h;
  locate(distance, i, t, h);
  const double t2 = t * t, t3 = t2 * t;
  const double value = (2 * t3 - 3 * t2 + 1) * log_u_[i] + (t3 - 2 * t2 + t) * h * slope_[i] +
                       (-2 * t3 + 3 * t2) * log_u_[i + 1] + (t3 - t2) * h * slope_[i + 1];
  return -std::exp(value);
}

double CasimirProfile::force(double distance) const {
  if (zero_) return 0.0;
  const double u = potential(distance);
  double slope;
  if (distance > z_max_) {
    slope = slope_.back();
  } else {
    std::size_t i;
    double t, h;
    locate(distance, i, t, h);
    const double t2 = t * t;
    slope = ((6 * t2 - 6 * t) * log_u_[i] + (3 * t2 - 4 * t + 1) * h * slope_[i] +
             (-6 * t2 + 6 * t) * log_u_[i + 1] + (3 * t2 - 2 * t) * h * slope_[i + 1]) /
            h;
  }
  // dU/dz = U * slope / z
  return -u * slope / distance;
}

}  // namespace levitrap::casimir


namespace levitrap::casimir {

namespace {

constexpr double anchor_step = 2e-3;  // in log omega0

using CacheKey = std::tuple<std::string, double, double, double, long>;

std::mutex cache_mutex;
std::map<CacheKey, std::unique_ptr<CasimirProfile>> profile_cache;

const CasimirProfile& cached_profile(const CacheKey& key, const PolarizabilityFn& alpha,
                                     const materials::HalfSpaceOptics& half_space) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = profile_cache.find(key);
    if (it != profile_cache.end()) return *it->second;
  }
  // Built outside the lock; a concurrent duplicate build yields identical data.
  auto profile = std::make_unique<CasimirProfile>(alpha, half_space, std::get<1>(key),
                                                  std::get<2>(key));
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto [it, inserted] = profile_cache.emplace(key, std::move(profile));
  return *it->second;
}

}  // namespace

EmitterCasimirTable::EmitterCasimirTable(materials::HalfSpaceOptics half_space, double z_min,
                                         double z_max)
    : half_space_(std::move(half_space)), z_min_(z_min), z_max_(z_max) {
  if (half_space_.name.empty()) {
    fail(ErrorCode::invalid_argument, "cached Casimir-Polder tables need a named half space");
  }
}

EmitterCasimirTable::Stencil EmitterCasimirTable::stencil(double omega0) const {
  const double position = std::log(omega0) / anchor_step;
  const long center = std::lround(position);
  const double t = position - static_cast<double>(center);
  Stencil s{};
  for (int j = 0; j < 3; ++j) {
    const long k = center - 1 + j;
    const double anchor = std::exp(static_cast<double>(k) * anchor_step);
    s.profiles[j] = &cached_profile({half_space_.name, z_min_, z_max_, 0.0, k},
                                    emitter_polarizability(1.0, anchor), half_space_);
  }
  s.weights[0] = 0.5 * t * (t - 1.0);
  s.weights[1] = 1.0 - t * t;
  s.weights[2] = 0.5 * t * (t + 1.0);
  return s;
}

double EmitterCasimirTable::potential(double distance, double dipole, double omega0) const {
  const auto s = stencil(omega0);
  double u = 0.0;
  for (int j = 0; j < 3; ++j) u += s.weights[j] * s.profiles[j]->potential(distance);
  return dipole * dipole * u;
}

double EmitterCasimirTable::force(double distance, double dipole, double omega0) const {
  const auto s = stencil(omega0);
  double f = 0.0;
  for (int j = 0; j < 3; ++j) f += s.weights[j] * s.profiles[j]->force(distance);
  return dipole * dipole * f;
}

const CasimirProfile& cached_sphere_profile(const materials::HalfSpaceOptics& half_space,
                                            double alpha, double z_min, double z_max) {
  if (half_space.name.empty()) {
    fail(ErrorCode::invalid_argument, "cached Casimir-Polder tables need a named half space");
  }
  return cached_profile({half_space.name, z_min, z_max, alpha, 0},
                        [alpha](double) { return alpha; }, half_space);
}

}  // namespace levitrap::casimir
