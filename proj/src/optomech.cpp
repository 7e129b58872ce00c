#include "levitrap/optomech.hpp"

#include <cmath>

#include "detail/quadrature.hpp"
#include "levitrap/constants.hpp"
#include "levitrap/error.hpp"
#include "levitrap/polarizability.hpp"
#include "levitrap/thermal.hpp"

namespace levitrap::optomech {

using namespace levitrap::constants;

double CavitySpec::budget_quality() const {
  return 1.0 / (1.0 / q_radiative + 1.0 / q_surface_scattering + 1.0 / q_material);
}

CavitySpec CavitySpec::red_detuned(double reference_transition, double detuning_magnitude) {
  CavitySpec c;
  c.mode_frequency = reference_transition - std::abs(detuning_magnitude);
  return c;
}

void validate(const CavitySpec& c) {
  if (!(c.mode_frequency > 0.0)) fail(ErrorCode::invalid_argument, "cavity frequency must be > 0");
  if (!(c.quality_factor > 0.0)) fail(ErrorCode::invalid_argument, "Q must be > 0");
  if (!(c.mode_volume > 0.0)) fail(ErrorCode::invalid_argument, "mode volume must be > 0");
  if (!(c.decay_length > 0.0)) fail(ErrorCode::invalid_argument, "cavity decay length must be > 0");
  if (!(c.surface_factor > 0.0)) fail(ErrorCode::invalid_argument, "surface factor must be > 0");
}

double vacuum_rabi(const CavitySpec& cavity, double dipole, double local_field) {
  return 2.0 * dipole *
         std::sqrt(hbar * cavity.mode_frequency / (3.0 * cavity.mode_volume * epsilon0)) / hbar *
         local_field;
}

double cavity_saturation(double xi, double decay_rate, double distance, double vacuum_rabi,
                         double detuning, double linewidth, double transverse_decay) {
  const double x = detuning / transverse_decay;
  return xi * xi * vacuum_rabi * vacuum_rabi * std::exp(-2.0 * decay_rate * distance) /
         (linewidth * transverse_decay * (1.0 + x * x));
}

double single_photon_coupling(double emitters, double excited_population, double xi,
                              double decay_rate, double distance, double vacuum_rabi,
                              double detuning, double zero_point) {
  return emitters * (1.0 - 2.0 * excited_population) * xi * xi *
         std::exp(-2.0 * decay_rate * distance) * vacuum_rabi * vacuum_rabi / (2.0 * detuning) *
         decay_rate * zero_point;
}

double kappa_scattering(double emitters, double xi, double decay_rate, double distance,
                        double vacuum_rabi, double transverse_decay, double detuning,
                        double linewidth) {
  return 0.5 * emitters * linewidth *
         cavity_saturation(xi, decay_rate, distance, vacuum_rabi, detuning, linewidth,
                           transverse_decay);
}

double kappa_total(const CavitySpec& cavity, double kappa_sc) {
  return cavity.intrinsic_loss() + kappa_sc;
}

double recoil_emitters(double emitters, double omega0, double zero_point, double linewidth,
                       double excited_population) {
  const double k = omega0 * zero_point / speed_of_light;
  return emitters * 0.4 * k * k * linewidth * excited_population;
}

double recoil_bulk(double alpha_s, double field_squared, double omega, double zero_point) {
  const double rate = alpha_s * alpha_s * field_squared * std::pow(omega / speed_of_light, 3) /
                      (12.0 * pi * epsilon0 * hbar);
  const double k = omega * zero_point / speed_of_light;
  return 0.4 * k * k * rate;
}

double recoil_blackbody(const materials::SphereSpec& sphere, double internal_temperature,
                        double zero_point) {
  if (!(internal_temperature > 0.0)) return 0.0;
  const auto band = thermal::blackbody_band();
  auto f = [&](double w) {
    const double k = w * zero_point / speed_of_light;
    return 0.4 * k * k * thermal::bb_emission_photon_density(sphere, w, internal_temperature);
  };
  return detail::integrate_log_panels(f, band.omega_min, band.omega_max, 60, 1e-8);
}

double cooperativity(const OptomechReport& r) {
  if (r.coupling == 0.0) return 0.0;
  return r.coupling * r.coupling / (r.kappa * r.recoil_total);
}

OptomechReport evaluate(const trap::TrapConfiguration& config, const trap::TrapReport& tr,
                        const CavitySpec& cavity) {
  validate(cavity);
  if (!std::isfinite(config.gap)) {
    fail(ErrorCode::invalid_argument, "optomechanics needs a finite fiber-cavity gap");
  }
  const trap::TrapModel model(config, tr.internal_temperature);
  const double lf = cavity.local_field ? config.sphere.local_field_factor() : 1.0;
  const double N = model.emitter_count();
  const double xi = cavity.surface_factor;
  const double lambda_c = cavity.decay_rate();

  OptomechReport r;
  r.cavity_distance = config.gap - tr.position;
  r.cavity_detuning = cavity.mode_frequency - model.transition_frequency();
  const double abs_detuning = std::abs(r.cavity_detuning);
  r.vacuum_rabi = vacuum_rabi(cavity, model.dipole(), lf);
  r.cavity_saturation =
      cavity_saturation(xi, lambda_c, r.cavity_distance, r.vacuum_rabi, abs_detuning,
                        model.linewidth(), model.transverse_decay());
  r.coupling = std::abs(single_photon_coupling(N, tr.excited_population, xi, lambda_c,
                                               r.cavity_distance, r.vacuum_rabi, abs_detuning,
                                               tr.zero_point));
  r.kappa_intrinsic = cavity.intrinsic_loss();
  r.kappa_scattering = kappa_scattering(N, xi, lambda_c, r.cavity_distance, r.vacuum_rabi,
                                        model.transverse_decay(), abs_detuning, model.linewidth());
  r.kappa = kappa_total(cavity, r.kappa_scattering);
  r.recoil_emitters = recoil_emitters(N, model.transition_frequency(), tr.zero_point,
                                      model.linewidth(), tr.excited_population);
  const double alpha_s = polarizability::bulk_polarizability(config.sphere.radius,
                                                             config.sphere.refractive_index_real);
  for (std::size_t i = 0; i < config.modes.size(); ++i) {
    r.recoil_bulk += recoil_bulk(alpha_s, model.field_squared(i, tr.position),
                                 config.modes[i].angular_frequency(model.transition_frequency()),
                                 tr.zero_point);
  }
  r.recoil_blackbody = recoil_blackbody(config.sphere, tr.internal_temperature, tr.zero_point);
  r.recoil_total = r.recoil_emitters + r.recoil_bulk + r.recoil_blackbody;
  r.sideband_ratio = tr.frequency / r.kappa;
  r.cooperativity = cooperativity(r);

  if (!(r.cavity_saturation < 1.0)) {
    r.diagnostics.push_back("cavity vacuum-field saturation s_cav >= 1");
  }
  if (!(tr.excited_population < 0.5)) {
    r.diagnostics.push_back("p_e >= 1/2: coupling sign not defined");
  }
  if (!(abs_detuning > model.transverse_decay())) {
    r.diagnostics.push_back("|Delta_c| <= gamma: dispersive elimination invalid");
  }
  const double relative = abs_detuning / model.transition_frequency();
  if (relative > 0.1) {
    r.diagnostics.push_back("|Delta_c|/omega0 = " + std::to_string(relative) +
                            " is not small");
  }
  if (cavity.quality_factor > cavity.budget_quality()) {
    r.diagnostics.push_back("Q exceeds the loss budget");
  }
  return r;
}

}  // namespace levitrap::optomech
