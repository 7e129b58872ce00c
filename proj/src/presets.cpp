#include <array>
#include <string>
#include <string_view>

#include "levitrap/config.hpp"
#include "levitrap/error.hpp"

namespace levitrap::config {

namespace {

// Shared blocks. Intensities in W/m^2 (1 mW/um^2 = 1e9 W/m^2), detunings in rad/s.
constexpr std::string_view sphere_block = R"(
sphere.material = nanodiamond-siv
sphere.radius = 15e-9
sphere.emitter_density = 1.4e27
environment.temperature = 300
geometry.gravity = 9.80665
geometry.fiber_surface = silica
geometry.cavity_surface = silica
)";

// Near-field bichromatic trap: red EH21 + blue HE11, Delta/2pi = 1e13 Hz.
constexpr std::string_view fiber_pair_block = R"(
modes.count = 2
modes[0].preset = EH21
modes[0].intensity = 6.2e8
modes[0].detuning = -6.283185307179586e13
modes[1].preset = HE11
modes[1].intensity = 1.85e9
modes[1].detuning = 6.283185307179586e13
trap.force_model = floquet
)";

constexpr std::string_view cavity_block = R"(
cavity.enabled = true
cavity.detuning = 1.4e15
cavity.reference_temperature = 300
cavity.quality_factor = 1e10
cavity.mode_volume = 820e-18
cavity.decay_length = 283e-9
cavity.surface_factor = 0.5
cavity.local_field = true
cavity.q_radiative = 2.2e18
cavity.q_surface_scattering = 6.6e18
cavity.q_material = 9e10
)";

// Two blue-detuned fields, fiber HE11 and cavity, |Delta| = 1e15 rad/s.
constexpr std::string_view fort_block = R"(
geometry.gap = 565e-9
modes.count = 2
modes[0].preset = HE11
modes[0].decay_length = 81e-9
modes[0].intensity = 1.43e9
modes[0].detuning = 1e15
modes[1].preset = cavity-WGM
modes[1].decay_length = 85e-9
modes[1].intensity = 1.72e9
modes[1].detuning = 1e15
trap.force_model = lowest-order
)";

struct Preset {
  std::string_view name;
  std::string_view body;
  bool fiber_pair;
  bool cavity;
  bool fort;
};

constexpr std::array<Preset, 8> presets{{
    {"fig1", R"(
scenario.kind = polarizability-sweep
sweep.parameter = intensity
sweep.min = 1e3
sweep.max = 1e11
sweep.count = 41
sweep.scale = log
)", false, false, false},
    {"fig2", R"(
scenario.kind = trap-profile
geometry.gap = inf
geometry.far_distance = 3e-6
)", true, false, false},
    {"a3", R"(
scenario.kind = trap-golden
geometry.gap = inf
geometry.far_distance = 3e-6
report.sensitivity = true
)", true, false, false},
    {"a5", R"(
scenario.kind = sideband-golden
geometry.gap = 900e-9
)", true, true, false},
    {"fig4", R"(
scenario.kind = sideband-sweep
geometry.gap = 900e-9
sweep.parameter = total_intensity
sweep.min = 9.88e7
sweep.max = 1.235e10
sweep.count = 13
sweep.scale = log
)", true, true, false},
    {"fig5", R"(
scenario.kind = position-sweep
geometry.gap = 900e-9
sweep.parameter = intensity_ratio
sweep.min = 0.6
sweep.max = 0.85
sweep.count = 6
sweep.scale = linear
search.min_total = 1e7
search.max_total = 2e10
search.tolerance = 0.01
)", true, true, false},
    {"fig6", R"(
scenario.kind = fort-profile
)", false, true, true},
    {"a6", R"(
scenario.kind = fort-golden
)", false, true, true},
}};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : presets) out.emplace_back(p.name);
  return out;
}

bool has_preset(std::string_view name) {
  for (const auto& p : presets) {
    if (p.name == name) return true;
  }
  return false;
}

Config preset(std::string_view name) {
  for (const auto& p : presets) {
    if (p.name != name) continue;
    std::string text(sphere_block);
    if (p.fiber_pair) text += fiber_pair_block;
    if (p.fort) text += fort_block;
    if (p.cavity) text += cavity_block;
    text += p.body;
    auto config = Config::parse(text, "preset:" + std::string(name));
    config.validate();
    return config;
  }
  fail(ErrorCode::config, "unknown scenario '" + std::string(name) + "'");
}

}  // namespace levitrap::config
