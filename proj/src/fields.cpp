#include "levitrap/fields.hpp"

#include <cmath>
#include <limits>

#include "levitrap/constants.hpp"
#include "levitrap/error.hpp"
#include "levitrap/polarizability.hpp"

namespace levitrap::fields {

using namespace levitrap::constants;

void validate(const EvanescentMode& mode) {
  if (!(mode.decay_length > 0.0)) {
    fail(ErrorCode::invalid_argument, "mode '" + mode.name + "': decay length must be > 0");
  }
  if (!(mode.surface_intensity >= 0.0)) {
    fail(ErrorCode::invalid_argument, "mode '" + mode.name + "': intensity must be >= 0");
  }
  if (!(mode.polarization_overlap > 0.0 && mode.polarization_overlap <= 1.0)) {
    fail(ErrorCode::invalid_argument,
         "mode '" + mode.name + "': polarization overlap must lie in (0, 1]");
  }
}

double field_amplitude_at(const EvanescentMode& mode, double distance) {
  const double surface = std::sqrt(2.0 * mode.surface_intensity / (epsilon0 * speed_of_light));
  return surface * std::exp(-distance / mode.decay_length);
}

double intensity_at(const EvanescentMode& mode, double distance) {
  return mode.surface_intensity * std::exp(-2.0 * distance / mode.decay_length);
}

double rabi_at(const EvanescentMode& mode, double distance, double dipole, double local_field) {
  return polarizability::rabi_from_amplitude(field_amplitude_at(mode, distance), dipole,
                                             local_field) *
         mode.polarization_overlap;
}

double log_gradient(const EvanescentMode& mode) {
  const double lambda = mode.decay_rate();
  return mode.surface == Surface::fiber ? -lambda : lambda;
}

SurfaceDistances opposing_geometry(double z_fiber, double gap) {
  if (!(z_fiber >= 0.0)) fail(ErrorCode::invalid_argument, "z must be >= 0");
  if (!std::isfinite(gap)) return {z_fiber, std::numeric_limits<double>::infinity()};
  if (z_fiber > gap) fail(ErrorCode::invalid_argument, "z lies beyond the gap");
  return {z_fiber, gap - z_fiber};
}

double distance_from_surface(const EvanescentMode& mode, double z_fiber, double gap) {
  const auto d = opposing_geometry(z_fiber, gap);
  return mode.surface == Surface::fiber ? d.fiber : d.cavity;
}

double beat_frequency(const EvanescentMode& a, const EvanescentMode& b) {
  return std::abs(b.detuning - a.detuning);
}

EvanescentMode mode_preset(std::string_view name) {
  EvanescentMode mode;
  mode.name = std::string(name);
  if (name == "EH21") {
    mode.decay_length = 210e-9;
  } else if (name == "HE11") {
    mode.decay_length = 135e-9;
  } else if (name == "cavity-WGM") {
    mode.decay_length = 283e-9;
    mode.surface = Surface::cavity;
  } else {
    fail(ErrorCode::invalid_argument, "unknown mode preset '" + std::string(name) + "'");
  }
  return mode;
}

std::string_view surface_name(Surface surface) {
  return surface == Surface::fiber ? "fiber" : "cavity";
}

Surface parse_surface(std::string_view name) {
  if (name == "fiber") return Surface::fiber;
  if (name == "cavity") return Surface::cavity;
  fail(ErrorCode::invalid_argument, "unknown surface '" + std::string(name) + "'");
}

}  // namespace levitrap::fields
