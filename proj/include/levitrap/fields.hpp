#pragma once

#include <string>
#include <string_view>

namespace levitrap::fields {

enum class Surface { fiber, cavity };

// One evanescent field E(z) = E_f exp(-Lambda * distance_from_origin_surface).
struct EvanescentMode {
  std::string name;
  double surface_intensity = 0.0;    // W/m^2 at the surface
  double decay_length = 0.0;         // 1/Lambda of the field amplitude, m
  double detuning = 0.0;             // omega - omega0, rad/s
  double polarization_overlap = 1.0;
  Surface surface = Surface::fiber;
  double phase = 0.0;                // kept for completeness; steady state ignores it

  double decay_rate() const { return 1.0 / decay_length; }
  double angular_frequency(double omega0) const { return omega0 + detuning; }
};

void validate(const EvanescentMode& mode);

// Field amplitude (V/m) at `distance` from the mode's own surface.
double field_amplitude_at(const EvanescentMode& mode, double distance);
double intensity_at(const EvanescentMode& mode, double distance);

// Orientation-averaged Rabi frequency including overlap and local field.
double rabi_at(const EvanescentMode& mode, double distance, double dipole, double local_field);

// d(log Omega)/dz along the fiber -> cavity axis: -Lambda for fiber modes, +Lambda for cavity modes.
double log_gradient(const EvanescentMode& mode);

struct SurfaceDistances {
  double fiber;
  double cavity;  // D - z; infinite when there is no cavity
};

SurfaceDistances opposing_geometry(double z_fiber, double gap);

// Distance from the mode's origin surface for a sphere centred at z_fiber.
double distance_from_surface(const EvanescentMode& mode, double z_fiber, double gap);

double beat_frequency(const EvanescentMode& a, const EvanescentMode& b);

// "EH21" (210 nm), "HE11" (135 nm), "cavity-WGM" (283 nm), zero intensity and detuning.
EvanescentMode mode_preset(std::string_view name);

std::string_view surface_name(Surface surface);
Surface parse_surface(std::string_view name);

}  // namespace levitrap::fields
