#include "levitrap/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <regex>
#include <sstream>

#include "levitrap/error.hpp"
#include "levitrap/materials.hpp"

namespace levitrap::config {

namespace {

enum class Kind { number, integer, boolean, text };

struct KeySpec {
  const char* key;
  Kind kind;
};

constexpr KeySpec global_keys[] = {
    {"scenario.kind", Kind::text},
    {"sphere.material", Kind::text},
    {"sphere.radius", Kind::number},
    {"sphere.emitter_density", Kind::number},
    {"sphere.refractive_index", Kind::number},
    {"sphere.mass_density", Kind::number},
    {"sphere.specific_heat", Kind::number},
    {"environment.temperature", Kind::number},
    {"geometry.gap", Kind::number},
    {"geometry.far_distance", Kind::number},
    {"geometry.gravity", Kind::number},
    {"geometry.fiber_surface", Kind::text},
    {"geometry.cavity_surface", Kind::text},
    {"trap.force_model", Kind::text},
    {"trap.casimir", Kind::boolean},
    {"trap.quantum", Kind::boolean},
    {"trap.fixed_temperature", Kind::number},
    {"trap.grid_step", Kind::number},
    {"trap.cutoff_tolerance", Kind::number},
    {"trap.max_iterations", Kind::integer},
    {"trap.damping", Kind::number},
    {"trap.position_tolerance", Kind::number},
    {"trap.temperature_tolerance", Kind::number},
    {"modes.count", Kind::integer},
    {"cavity.enabled", Kind::boolean},
    {"cavity.detuning", Kind::number},
    {"cavity.reference_temperature", Kind::number},
    {"cavity.quality_factor", Kind::number},
    {"cavity.mode_volume", Kind::number},
    {"cavity.decay_length", Kind::number},
    {"cavity.surface_factor", Kind::number},
    {"cavity.local_field", Kind::boolean},
    {"cavity.q_radiative", Kind::number},
    {"cavity.q_surface_scattering", Kind::number},
    {"cavity.q_material", Kind::number},
    {"sweep.parameter", Kind::text},
    {"sweep.min", Kind::number},
    {"sweep.max", Kind::number},
    {"sweep.count", Kind::integer},
    {"sweep.scale", Kind::text},
    {"search.min_total", Kind::number},
    {"search.max_total", Kind::number},
    {"search.tolerance", Kind::number},
    {"report.sensitivity", Kind::boolean},
};

constexpr KeySpec mode_keys[] = {
    {"preset", Kind::text},       {"name", Kind::text},    {"surface", Kind::text},
    {"decay_length", Kind::number}, {"intensity", Kind::number}, {"detuning", Kind::number},
    {"overlap", Kind::number},    {"phase", Kind::number},
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::optional<double> to_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || std::isnan(value)) {
    return std::nullopt;
  }
  return value;
}

const std::regex& mode_key_pattern() {
  static const std::regex pattern(R"(modes\[(\d+)\]\.([a-z_]+))");
  return pattern;
}

std::optional<Kind> key_kind(const std::string& key, long mode_count) {
  for (const auto& spec : global_keys) {
    if (key == spec.key) return spec.kind;
  }
  std::smatch match;
  if (std::regex_match(key, match, mode_key_pattern())) {
    const long index = std::stol(match[1].str());
    if (index >= mode_count) return std::nullopt;
    for (const auto& spec : mode_keys) {
      if (match[2].str() == spec.key) return spec.kind;
    }
  }
  return std::nullopt;
}

std::string mode_key(std::size_t index, const char* field) {
  return "modes[" + std::to_string(index) + "]." + field;
}

}  // namespace

Config Config::parse(std::string_view text, std::string_view origin) {
  Config config;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::config, std::string(origin) + ":" + std::to_string(number) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) {
      fail(ErrorCode::config, std::string(origin) + ":" + std::to_string(number) + ": empty key");
    }
    config.set(key, value);
  }
  return config;
}

void Config::merge(const Config& other) {
  for (const auto& [key, value] : other.entries_) entries_[key] = value;
}

void Config::set(const std::string& key, const std::string& value) {
  std::string v = trim(value);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  entries_[trim(key)] = v;
}

bool Config::contains(const std::string& key) const { return entries_.count(key) != 0; }

void Config::erase(const std::string& key) { entries_.erase(key); }

std::string Config::get_string(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) fail(ErrorCode::config, "missing configuration key '" + key + "'");
  return it->second;
}

double Config::get_number(const std::string& key) const {
  const auto text = get_string(key);
  const auto value = to_number(text);
  if (!value) fail(ErrorCode::config, "key '" + key + "': '" + text + "' is not a number");
  return *value;
}

long Config::get_integer(const std::string& key) const {
  const double value = get_number(key);
  if (value != std::floor(value) || std::abs(value) > 1e15) {
    fail(ErrorCode::config, "key '" + key + "' must be an integer");
  }
  return static_cast<long>(value);
}

bool Config::get_bool(const std::string& key) const {
  const auto text = get_string(key);
  if (text == "true") return true;
  if (text == "false") return false;
  fail(ErrorCode::config, "key '" + key + "': '" + text + "' is not true/false");
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return contains(key) ? get_string(key) : fallback;
}
double Config::get_number(const std::string& key, double fallback) const {
  return contains(key) ? get_number(key) : fallback;
}
long Config::get_integer(const std::string& key, long fallback) const {
  return contains(key) ? get_integer(key) : fallback;
}
bool Config::get_bool(const std::string& key, bool fallback) const {
  return contains(key) ? get_bool(key) : fallback;
}

void Config::validate() const {
  const long modes = get_integer("modes.count", 0);
  if (modes < 0) fail(ErrorCode::config, "modes.count must be >= 0");
  for (const auto& [key, value] : entries_) {
    const auto kind = key_kind(key, modes);
    if (!kind) fail(ErrorCode::config, "unknown configuration key '" + key + "'");
    switch (*kind) {
      case Kind::number: get_number(key); break;
      case Kind::integer: get_integer(key); break;
      case Kind::boolean: get_bool(key); break;
      case Kind::text: break;
    }
  }
  if (contains("sweep.count") && get_integer("sweep.count") < 2) {
    fail(ErrorCode::config, "sweep.count must be >= 2");
  }
}

std::string Config::dump() const {
  std::string out;
  for (const auto& [key, value] : entries_) {
    const bool needs_quotes = value.empty() || value.find_first_of(" #\t") != std::string::npos;
    out += key + " = " + (needs_quotes ? "\"" + value + "\"" : value) + "\n";
  }
  return out;
}

trap::TrapConfiguration trap_configuration(const Config& c) {
  c.validate();
  trap::TrapConfiguration t;
  t.sphere = materials::sphere_preset(c.get_string("sphere.material", "nanodiamond-siv"));
  t.sphere.radius = c.get_number("sphere.radius", t.sphere.radius);
  t.sphere.emitter.density = c.get_number("sphere.emitter_density", t.sphere.emitter.density);
  if (c.contains("sphere.refractive_index")) {
    t.sphere.refractive_index_real = c.get_number("sphere.refractive_index");
    t.sphere.emitter.host_index = t.sphere.refractive_index_real;
  }
  t.sphere.mass_density = c.get_number("sphere.mass_density", t.sphere.mass_density);
  t.sphere.specific_heat = c.get_number("sphere.specific_heat", t.sphere.specific_heat);

  t.environment_temperature = c.get_number("environment.temperature", t.environment_temperature);
  t.gap = c.get_number("geometry.gap", t.gap);
  t.far_distance = c.get_number("geometry.far_distance", t.far_distance);
  t.gravity = c.get_number("geometry.gravity", t.gravity);
  t.fiber_surface = materials::half_space_preset(c.get_string("geometry.fiber_surface", "silica"));
  t.cavity_surface =
      materials::half_space_preset(c.get_string("geometry.cavity_surface", "silica"));

  t.force_model = trap::parse_force_model(c.get_string("trap.force_model", "floquet"));
  t.include_casimir = c.get_bool("trap.casimir", t.include_casimir);
  t.include_quantum = c.get_bool("trap.quantum", t.include_quantum);
  t.fixed_temperature = c.get_number("trap.fixed_temperature", t.fixed_temperature);
  t.grid_step = c.get_number("trap.grid_step", t.grid_step);
  t.cutoff_tolerance = c.get_number("trap.cutoff_tolerance", t.cutoff_tolerance);
  t.max_iterations = static_cast<int>(c.get_integer("trap.max_iterations", t.max_iterations));
  t.damping = c.get_number("trap.damping", t.damping);
  t.position_tolerance = c.get_number("trap.position_tolerance", t.position_tolerance);
  t.temperature_tolerance = c.get_number("trap.temperature_tolerance", t.temperature_tolerance);

  const auto count = static_cast<std::size_t>(c.get_integer("modes.count", 0));
  for (std::size_t i = 0; i < count; ++i) {
    fields::EvanescentMode mode;
    if (c.contains(mode_key(i, "preset"))) {
      mode = fields::mode_preset(c.get_string(mode_key(i, "preset")));
    }
    mode.name = c.get_string(mode_key(i, "name"), mode.name.empty() ? "mode" + std::to_string(i)
                                                                     : mode.name);
    if (c.contains(mode_key(i, "surface"))) {
      mode.surface = fields::parse_surface(c.get_string(mode_key(i, "surface")));
    }
    mode.decay_length = c.get_number(mode_key(i, "decay_length"), mode.decay_length);
    mode.surface_intensity = c.get_number(mode_key(i, "intensity"), mode.surface_intensity);
    mode.detuning = c.get_number(mode_key(i, "detuning"), mode.detuning);
    mode.polarization_overlap = c.get_number(mode_key(i, "overlap"), mode.polarization_overlap);
    mode.phase = c.get_number(mode_key(i, "phase"), mode.phase);
    t.modes.push_back(mode);
  }
  trap::validate(t);
  return t;
}

std::optional<optomech::CavitySpec> cavity_spec(const Config& c) {
  c.validate();
  if (!c.get_bool("cavity.enabled", false)) return std::nullopt;
  const auto sphere = trap_configuration(c).sphere;
  const double t_ref = c.get_number("cavity.reference_temperature", 300.0);
  auto cavity = optomech::CavitySpec::red_detuned(sphere.emitter.transition_frequency(t_ref),
                                                  c.get_number("cavity.detuning", 1.4e15));
  cavity.quality_factor = c.get_number("cavity.quality_factor", cavity.quality_factor);
  cavity.mode_volume = c.get_number("cavity.mode_volume", cavity.mode_volume);
  cavity.decay_length = c.get_number("cavity.decay_length", cavity.decay_length);
  cavity.surface_factor = c.get_number("cavity.surface_factor", cavity.surface_factor);
  cavity.local_field = c.get_bool("cavity.local_field", cavity.local_field);
  cavity.q_radiative = c.get_number("cavity.q_radiative", cavity.q_radiative);
  cavity.q_surface_scattering =
      c.get_number("cavity.q_surface_scattering", cavity.q_surface_scattering);
  cavity.q_material = c.get_number("cavity.q_material", cavity.q_material);
  optomech::validate(cavity);
  return cavity;
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    out[i] = log ? min * std::pow(max / min, t) : min + (max - min) * t;
  }
  out.front() = min;
  out.back() = max;
  return out;
}

SweepAxis sweep_axis(const Config& c) {
  c.validate();
  SweepAxis axis;
  axis.parameter = c.get_string("sweep.parameter");
  axis.min = c.get_number("sweep.min");
  axis.max = c.get_number("sweep.max");
  axis.count = c.get_integer("sweep.count");
  const auto scale = c.get_string("sweep.scale", "linear");
  if (scale != "log" && scale != "linear") {
    fail(ErrorCode::config, "sweep.scale must be 'log' or 'linear'");
  }
  axis.log = scale == "log";
  if (axis.log && !(axis.min > 0.0 && axis.max > 0.0)) {
    fail(ErrorCode::config, "log sweeps need positive bounds");
  }
  return axis;
}

}  // namespace levitrap::config
