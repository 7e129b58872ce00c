#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levitrap/levitrap.h"

namespace {

constexpr const char* output_dir_variable = "LEVITRAP_OUTPUT_DIR";

int exit_code(lt_status status) {
  switch (status) {
    case LT_OK: return 0;
    case LT_NO_TRAP: return 2;
    case LT_CONVERGENCE: return 3;
    default: return 1;
  }
}

int report(lt_status status) {
  std::cerr << "levitrap: " << lt_status_string(status);
  const std::string detail = lt_last_error();
  if (!detail.empty()) std::cerr << ": " << detail;
  std::cerr << "\n";
  return exit_code(status);
}

bool write_file(const std::filesystem::path& path, const char* text, size_t length) {
  std::ofstream out(path, std::ios::binary);
  out.write(text, static_cast<std::streamsize>(length));
  return static_cast<bool>(out);
}

struct Handle {
  lt_scenario* ptr = nullptr;
  ~Handle() { lt_scenario_destroy(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Levitated nanosphere trap calculator"};
  std::string scenario;
  std::string config_file;
  std::vector<std::string> overrides;
  std::string out_path;
  std::string format = "csv";
  int jobs = 1;
  bool list = false;
  bool dump_config = false;

  app.add_option("scenario", scenario, "Preset to run (see --list)");
  app.add_option("--config", config_file, "key = value file merged onto the preset")
      ->check(CLI::ExistingFile);
  app.add_option("--set", overrides, "Override one key (key=value), repeatable");
  app.add_option("--out", out_path, "Output file; the directory from LEVITRAP_OUTPUT_DIR is used otherwise");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", jobs, "Worker threads for sweeps and profiles")->check(CLI::PositiveNumber);
  app.add_flag("--list", list, "List presets and exit");
  app.add_flag("--dump-config", dump_config, "Print the effective configuration and exit");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (size_t i = 0; i < lt_scenario_count(); ++i) std::cout << lt_scenario_name(i) << "\n";
    return 0;
  }
  if (scenario.empty()) {
    std::cerr << "levitrap: a scenario is required (see --list)\n";
    return 1;
  }

  Handle h;
  if (auto s = lt_scenario_create(scenario.c_str(), &h.ptr); s != LT_OK) return report(s);
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    std::stringstream text;
    text << in.rdbuf();
    if (!in) {
      std::cerr << "levitrap: cannot read " << config_file << "\n";
      return 1;
    }
    if (auto s = lt_scenario_load_config(h.ptr, text.str().c_str()); s != LT_OK) return report(s);
  }
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      std::cerr << "levitrap: --set expects key=value, got '" << item << "'\n";
      return 1;
    }
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    if (auto s = lt_scenario_set(h.ptr, key.c_str(), value.c_str()); s != LT_OK) return report(s);
  }
  if (auto s = lt_scenario_set_jobs(h.ptr, jobs); s != LT_OK) return report(s);

  const char* text = nullptr;
  size_t length = 0;
  if (dump_config) {
    if (auto s = lt_scenario_output(h.ptr, LT_OUTPUT_CONFIG, &text, &length); s != LT_OK) {
      return report(s);
    }
    std::cout.write(text, static_cast<std::streamsize>(length));
    return 0;
  }

  if (auto s = lt_scenario_run(h.ptr); s != LT_OK) return report(s);

  const bool csv = format == "csv";
  std::filesystem::path primary;
  if (!out_path.empty()) {
    primary = out_path;
  } else if (const char* dir = std::getenv(output_dir_variable); dir && *dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    primary = std::filesystem::path(dir) / (scenario + (csv ? ".csv" : ".json"));
  }

  if (auto s = lt_scenario_output(h.ptr, csv ? LT_OUTPUT_CSV : LT_OUTPUT_JSON, &text, &length);
      s != LT_OK) {
    return report(s);
  }
  if (primary.empty()) {
    std::cout.write(text, static_cast<std::streamsize>(length));
    return 0;
  }
  if (!write_file(primary, text, length)) {
    std::cerr << "levitrap: cannot write " << primary << "\n";
    return 1;
  }
  if (csv) {
    if (auto s = lt_scenario_output(h.ptr, LT_OUTPUT_SIDECAR, &text, &length); s != LT_OK) {
      return report(s);
    }
    auto side = primary;
    side.replace_extension(".json");
    if (!write_file(side, text, length)) {
      std::cerr << "levitrap: cannot write " << side << "\n";
      return 1;
    }
  }
  return 0;
}
