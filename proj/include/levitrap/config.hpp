#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levitrap/optomech.hpp"
#include "levitrap/trap.hpp"

namespace levitrap::config {

// Flat `key = value` document with dotted keys (`modes[1].intensity`).
// Values are typed scalars: numbers (inf allowed), true/false, or strings
// (bare words or "quoted"). Keys are kept sorted, so dumps are stable.
class Config {
 public:
  static Config parse(std::string_view text, std::string_view origin = "<text>");

  // Later documents override earlier ones key by key.
  void merge(const Config& other);
  void set(const std::string& key, const std::string& value);
  bool contains(const std::string& key) const;
  void erase(const std::string& key);

  std::string get_string(const std::string& key) const;
  double get_number(const std::string& key) const;
  long get_integer(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_number(const std::string& key, double fallback) const;
  long get_integer(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  // Error(config) on unknown keys or mistyped values.
  void validate() const;
  std::string dump() const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

std::vector<std::string> preset_names();
bool has_preset(std::string_view name);
Config preset(std::string_view name);

trap::TrapConfiguration trap_configuration(const Config& config);
std::optional<optomech::CavitySpec> cavity_spec(const Config& config);

struct SweepAxis {
  std::string parameter;
  double min = 0.0;
  double max = 0.0;
  long count = 2;
  bool log = false;
  std::vector<double> values() const;
};
SweepAxis sweep_axis(const Config& config);

}  // namespace levitrap::config
