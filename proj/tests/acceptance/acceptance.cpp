#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "levitrap/casimir.hpp"
#include "levitrap/config.hpp"
#include "levitrap/constants.hpp"
#include "levitrap/error.hpp"
#include "levitrap/floquet.hpp"
#include "levitrap/materials.hpp"
#include "levitrap/optomech.hpp"
#include "levitrap/polarizability.hpp"
#include "levitrap/scenarios.hpp"
#include "levitrap/table.hpp"
#include "levitrap/thermal.hpp"
#include "levitrap/trap.hpp"
#include "oracles.hpp"

using namespace levitrap;
using namespace levitrap::constants;

namespace {

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

using Checks = std::vector<Check>;

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Check within(const std::string& name, double computed, double reference, double tolerance) {
  const double dev = (computed - reference) / reference;
  return {name, std::isfinite(computed) && std::abs(dev) <= tolerance,
          fmt("computed %.6g, reference %.6g, deviation %+.1f%%, tolerance +-%g%%", computed,
              reference, 100.0 * dev, 100.0 * tolerance)};
}

// Floquet solution against the time-domain oracle and the cutoff-0 closed form.
Checks criterion_1() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double G = 1e9;
  double worst_w = 0.0, worst_p = 0.0, worst_f = 0.0, worst_closed = 0.0;
  int unsettled = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double g = G * (0.5 + 9.5 * u01(rng));
    const double rabi = g * std::pow(10.0, -2.0 + 3.0 * u01(rng));
    const double xi = 3.0 * u01(rng);
    const double det = g * std::pow(10.0, 2.0 * u01(rng));
    const auto d = floquet::BichromaticDrive::from_ratio(rabi, xi, det, G, g);
    const double g1 = -d.rabi_1 / 210e-9, g2 = d.rabi_2 / 135e-9;

    const auto sol = floquet::converge_cutoff(d);
    const auto ode = oracles::bloch_ode_steady_state(
        {d.rabi_1, d.rabi_2, d.detuning, d.linewidth, d.transverse_decay}, g1, g2);
    if (!ode.settled) ++unsettled;
    worst_w = std::max(worst_w, rel(sol.w_at(0).real(), ode.w0()));
    worst_p = std::max(worst_p, rel(floquet::excited_population(sol), ode.excited_population()));
    worst_f = std::max(worst_f, rel(floquet::time_averaged_force(sol, g1, g2), ode.force));

    const auto zero = floquet::solve_bloch_fourier(d, 0);
    const double s1 = oracles::mono_saturation(d.rabi_1, d.detuning, G, g);
    const double s2 = oracles::mono_saturation(d.rabi_2, d.detuning, G, g);
    const double lg1 = -1.0 / 210e-9, lg2 = 1.0 / 135e-9;
    worst_closed = std::max(
        {worst_closed,
         rel(floquet::time_averaged_force(zero, d.rabi_1 * lg1, d.rabi_2 * lg2),
             floquet::lowest_order_force(s1, s2, lg1, lg2, d.detuning, G, g)),
         rel(floquet::excited_population(zero), floquet::lowest_order_population(s1, s2))});
  }
  return {
      {"ODE oracle settled on every drive", unsettled == 0, fmt("%d of 100 unsettled", unsettled)},
      {"w0 vs ODE oracle", worst_w <= 1e-6, fmt("worst relative error %.2e, limit 1e-6", worst_w)},
      {"p_e vs ODE oracle", worst_p <= 1e-6, fmt("worst relative error %.2e, limit 1e-6", worst_p)},
      {"force vs ODE oracle", worst_f <= 1e-6, fmt("worst relative error %.2e, limit 1e-6", worst_f)},
      {"cutoff 0 vs closed form", worst_closed <= 1e-10,
       fmt("worst relative error %.2e, limit 1e-10", worst_closed)},
  };
}

Checks criterion_2() {
  const double omega0 = materials::siv_transition(300.0);
  const double dipole = materials::siv_dipole_moment(300.0, 2.4);
  const auto silica = materials::silica_half_space();
  const std::vector<std::pair<std::string, casimir::PolarizabilityFn>> models{
      {"emitter", casimir::emitter_polarizability(dipole, omega0)},
      {"sphere", casimir::sphere_polarizability(15e-9, 2.4)}};
  Checks out;
  for (const auto& [label, alpha] : models) {
    for (double z : {50e-9, 100e-9, 300e-9, 1000e-9}) {
      const double main = casimir::cp_potential({z, silica, alpha});
      const auto ref = oracles::dense_cp_quadrature(z, silica.epsilon_imag_axis, alpha, 6001);
      const double err = rel(main, ref.value);
      out.push_back({fmt("%s at %.0f nm", label.c_str(), z * 1e9), err <= 1e-4,
                     fmt("U %.6e J, oracle %.6e J (+-%.1e), relative error %.2e, limit 1e-4", main,
                         ref.value, ref.estimated_error, err)});
    }
  }
  const double vacuum =
      casimir::cp_potential({100e-9, materials::vacuum_half_space(), models[0].second});
  out.push_back({"eps = 1 gives exactly 0", vacuum == 0.0, fmt("U = %g J", vacuum)});
  return out;
}

Checks criterion_3() {
  Checks out;
  const auto a3 = trap::find_equilibrium(config::trap_configuration(config::preset("a3")));
  out.push_back(within("trap configuration T_i (K)", a3.internal_temperature, 587.0, 0.15));
  const auto a6 = trap::find_equilibrium(config::trap_configuration(config::preset("a6")));
  out.push_back(within("FORT configuration T_i (K)", a6.internal_temperature, 385.0, 0.15));
  const auto sphere = materials::nanodiamond_siv();
  const double dark = thermal::steady_state_temperature(
      sphere, thermal::ThermalEnvironment::single_beam(300.0, 0.0, materials::siv_transition(300.0)));
  const double oracle = oracles::dark_fixed_point(sphere, 300.0);
  out.push_back({"I = 0 fixed point vs oracle", std::abs(dark - oracle) <= 5.0,
                 fmt("%.3f K vs %.3f K, limit 5 K", dark, oracle)});
  return out;
}

Checks golden_checks(const scenarios::ScenarioResult& r, int criterion) {
  Checks out;
  for (const auto& g : r.scalars.at("golden")) {
    if (g.at("criterion").get<int>() != criterion) continue;
    const auto text = [](const scenarios::Json& v) {
      return v.is_null() ? std::string("null") : fmt("%.6g", v.get<double>());
    };
    out.push_back({g.at("quantity").get<std::string>(), g.at("pass").get<bool>(),
                   "computed " + text(g.at("computed")) + ", reference " + text(g.at("reference")) +
                       ", deviation " + text(g.at("rel_deviation")) + ", tolerance " +
                       g.at("tolerance").get<std::string>()});
  }
  return out;
}

void print_informational(const scenarios::ScenarioResult& r) {
  for (const auto& g : r.scalars.at("golden")) {
    if (g.at("criterion").get<int>() != 0) continue;
    std::printf("  info %s: computed %s, reference %s, %s\n",
                g.at("quantity").get<std::string>().c_str(), g.at("computed").dump().c_str(),
                g.at("reference").dump().c_str(), g.at("pass").get<bool>() ? "within" : "outside");
  }
}

Checks criterion_4() {
  const auto r = scenarios::run(config::preset("a3"));
  auto out = golden_checks(r, 4);
  if (r.scalars.contains("sensitivity")) {
    std::printf("  sensitivity (overlap, intensity scale): z_t nm, depth K, T_i K\n");
    for (const auto& cell : r.scalars.at("sensitivity")) {
      std::printf("    %.2f  x%.1f  %s  %s  %s  %s\n", cell.at("overlap").get<double>(),
                  cell.at("intensity_scale").get<double>(), cell.at("z_t_nm").dump().c_str(),
                  cell.at("depth_K").dump().c_str(), cell.at("internal_temperature_K").dump().c_str(),
                  cell.at("status").get<std::string>().c_str());
    }
  }
  return out;
}

Checks criterion_5() {
  const auto cavity = config::cavity_spec(config::preset("a5"));
  return {within("kappa / 2 pi (Hz)", cavity->intrinsic_loss() / two_pi, 18.3e3, 0.02)};
}

Checks criterion_6() {
  const auto r = scenarios::run(config::preset("a5"));
  print_informational(r);
  return golden_checks(r, 6);
}

Checks criterion_7() {
  const auto r = scenarios::run(config::preset("a6"));
  print_informational(r);
  return golden_checks(r, 7);
}

Checks criterion_8() {
  Checks out;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto log_u = [&](double lo, double hi) { return lo * std::pow(hi / lo, u01(rng)); };

  double conj_worst = 0.0, dual_worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double G = 1e9, g = G * (0.5 + 9.5 * u01(rng));
    const auto d = floquet::BichromaticDrive::from_ratio(g * log_u(0.01, 10.0), 3.0 * u01(rng),
                                                         g * log_u(1.0, 100.0), G, g);
    const auto sol = floquet::converge_cutoff(d);
    for (int n = -sol.cutoff; n <= sol.cutoff; ++n) {
      conj_worst = std::max({conj_worst, std::abs(sol.w_at(n) - std::conj(sol.w_at(-n))),
                             std::abs(sol.v_at(n) - std::conj(sol.u_at(-n)))});
    }
    dual_worst = std::max(dual_worst, std::abs(floquet::excited_population(sol) -
                                               floquet::excited_population_from_coherences(sol)));
  }
  out.push_back({"Fourier conjugation symmetries", conj_worst <= 1e-12,
                 fmt("worst %.2e, limit 1e-12", conj_worst)});
  out.push_back({"dual p_e expressions", dual_worst <= 1e-10,
                 fmt("worst %.2e, limit 1e-10", dual_worst)});

  const auto alpha = casimir::emitter_polarizability(materials::siv_dipole_moment(300.0, 2.4),
                                                     materials::siv_transition(300.0));
  const auto silica = materials::silica_half_space();
  double cp_worst = 0.0;
  for (double z : {50e-9, 100e-9, 300e-9}) {
    const double h = 1e-4 * z;
    const double numeric = -(casimir::cp_potential({z + h, silica, alpha}) -
                             casimir::cp_potential({z - h, silica, alpha})) / (2 * h);
    cp_worst = std::max(cp_worst, rel(casimir::cp_force({z, silica, alpha}), numeric));
  }
  out.push_back({"CP force = -dU/dz", cp_worst <= 1e-5, fmt("worst %.2e, limit 1e-5", cp_worst)});

  const auto tc = config::trap_configuration(config::preset("fig2"));
  const trap::TrapModel model(tc, 587.0);
  const auto grid = trap::uniform_grid(model);
  const auto p = trap::potential_profile(model, grid);
  double total_worst = 0.0;
  double scale = 0.0;
  for (double f : p.force) scale = std::max(scale, std::abs(f));
  // Five-point stencil on the uniform profile grid.
  const double h = p.z[1] - p.z[0];
  for (std::size_t i = 2; i + 2 < p.z.size(); ++i) {
    const double numeric = -(8.0 * (p.total[i + 1] - p.total[i - 1]) - (p.total[i + 2] - p.total[i - 2])) /
                           (12.0 * h);
    total_worst = std::max(total_worst, std::abs(numeric - p.force[i]) / scale);
  }
  out.push_back({"total force = -dU/dz on the trap profile", total_worst <= 1e-3,
                 fmt("worst %.2e of the peak force, limit 1e-3", total_worst)});

  bool odd = true;
  for (int trial = 0; trial < 1000; ++trial) {
    polarizability::PolarizabilityContext c{log_u(1e8, 1e15), log_u(1e6, 1e13), log_u(1e8, 1e10),
                                            log_u(1e9, 1e13)};
    const double a = polarizability::quantum_polarizability(c, 1e-29);
    c.detuning = -c.detuning;
    odd = odd && polarizability::quantum_polarizability(c, 1e-29) == -a;
  }
  out.push_back({"alpha_q odd in detuning", odd, "1000 random contexts"});

  bool maximal = true;
  for (int trial = 0; trial < 20; ++trial) {
    const double G = log_u(1e8, 1e10), g = G * log_u(0.5, 1e4), rabi = g * log_u(1e-3, 1e2);
    const double best = polarizability::optimal_detuning(rabi, g, G);
    const double peak = std::abs(polarizability::quantum_polarizability({best, rabi, G, g}, 1e-29));
    for (int i = 0; i < 1000; ++i) {
      const double det = best * std::pow(10.0, -3.0 + 6.0 * i / 999.0);
      maximal = maximal && std::abs(polarizability::quantum_polarizability({det, rabi, G, g}, 1e-29)) <=
                               peak * (1.0 + 1e-12);
    }
  }
  out.push_back({"optimal detuning maximises |alpha_q|", maximal, "20 contexts x 1000 detunings"});

  const auto sphere = materials::nanodiamond_siv();
  const double omega = materials::siv_transition(300.0);
  bool monotone = true;
  double previous = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double I = 1e6 * std::pow(5e3, i / 19.0);
    const double T = thermal::steady_state_temperature(
        sphere, thermal::ThermalEnvironment::single_beam(300.0, I, omega));
    monotone = monotone && T >= previous;
    previous = T;
  }
  out.push_back({"T_i monotone in intensity", monotone, fmt("20 intensities up to %.0f K", previous)});

  bool identical = true;
  for (const char* name : {"fig1", "fig6"}) {
    const auto c = config::preset(name);
    const auto a = scenarios::run(c, 1);
    const auto b = scenarios::run(c, 3);
    identical = identical && table::to_csv(a.table) == table::to_csv(b.table) &&
                scenarios::sidecar(a) == scenarios::sidecar(b);
  }
  out.push_back({"byte-identical reruns", identical, "fig1 and fig6, 1 and 3 jobs"});
  return out;
}

const std::vector<std::pair<std::string, std::function<Checks()>>> criteria{
    {"Floquet solution", criterion_1},     {"Casimir-Polder quadrature", criterion_2},
    {"thermal steady state", criterion_3}, {"trap golden values", criterion_4},
    {"cavity intrinsic loss", criterion_5}, {"resolved-sideband table", criterion_6},
    {"FORT table", criterion_7},           {"property suites", criterion_8},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (std::size_t i = 1; i <= criteria.size(); ++i) selected.push_back(static_cast<int>(i));
  }
  bool all = true;
  for (int n : selected) {
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", n);
      return 2;
    }
    const auto& [title, body] = criteria[n - 1];
    const auto start = std::chrono::steady_clock::now();
    Checks checks;
    try {
      checks = body();
    } catch (const std::exception& e) {
      checks.push_back({"evaluation", false, e.what()});
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& c : checks) {
      std::printf("criterion %d (%s) %s: %s [%s]\n", n, title.c_str(), c.name.c_str(),
                  c.pass ? "PASS" : "FAIL", c.detail.c_str());
      all = all && c.pass;
    }
    std::printf("criterion %d runtime %.1f s\n", n, seconds);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
