#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "levitrap/constants.hpp"
#include "levitrap/error.hpp"
#include "levitrap/floquet.hpp"
#include "oracles.hpp"

using namespace levitrap::floquet;
using levitrap::constants::hbar;

namespace {

constexpr double Gamma = 1.2e9;
constexpr double gamma_t = 3.1e9;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

BichromaticDrive drive(double rabi_gamma, double xi, double detuning_gamma, double G = Gamma,
                       double g = gamma_t) {
  return BichromaticDrive::from_ratio(rabi_gamma * g, xi, detuning_gamma * g, G, g);
}

}  // namespace

TEST_CASE("undriven emitter stays in the ground state") {
  const auto sol = solve_bloch_fourier(drive(0.0, 1.0, 5.0), 4);
  CHECK(sol.w_at(0).real() == doctest::Approx(-1.0).epsilon(1e-15));
  for (int n = -4; n <= 4; ++n) {
    if (n != 0) CHECK(std::abs(sol.w_at(n)) == 0.0);
    CHECK(std::abs(sol.u_at(n)) == 0.0);
    CHECK(std::abs(sol.v_at(n)) == 0.0);
  }
  CHECK(time_averaged_force(sol, 1e9, 1e9) == 0.0);
  CHECK(excited_population(sol) == doctest::Approx(0.0));
  CHECK(converge_cutoff(drive(0.0, 1.0, 5.0)).cutoff == 0);
}

TEST_CASE("single mode at cutoff zero is the monochromatic steady state") {
  for (double rabi : {0.05, 0.7, 3.0}) {
    for (double det : {-20.0, -1.5, 2.0, 40.0}) {
      const auto d = drive(rabi, 0.0, det);
      const auto sol = solve_bloch_fourier(d, 0);
      // Mode 1 sits at omega0 - Delta, so its laser detuning is -Delta.
      const double s1 = oracles::mono_saturation(d.rabi_1, -d.detuning, Gamma, gamma_t);
      CHECK(rel(sol.w_at(0).real(), -1.0 / (1.0 + s1)) < 1e-12);
      CHECK(rel(excited_population(sol),
                oracles::mono_excited_population(d.rabi_1, -d.detuning, Gamma, gamma_t)) < 1e-12);
      const double g1 = -4.7e6;
      CHECK(rel(time_averaged_force(sol, d.rabi_1 * g1, 0.0),
                oracles::mono_force(d.rabi_1, g1, -d.detuning, Gamma, gamma_t)) < 1e-10);
    }
  }
}

TEST_CASE("resonant drive with Omega^2 = gamma Gamma gives p_e = 1/4") {
  const auto d = BichromaticDrive::from_ratio(std::sqrt(gamma_t * Gamma), 0.0, 0.0, Gamma, gamma_t);
  CHECK(excited_population(solve_bloch_fourier(d, 0)) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("cutoff zero reproduces the lowest-order closed form") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double rabi = std::pow(10.0, -2.0 + 3.0 * u01(rng));
    const double xi = 3.0 * u01(rng);
    const double det = std::pow(10.0, 2.0 * u01(rng));
    const auto d = drive(rabi, xi, det);
    const auto sol = solve_bloch_fourier(d, 0);
    const double s1 = oracles::mono_saturation(d.rabi_1, d.detuning, Gamma, gamma_t);
    const double s2 = oracles::mono_saturation(d.rabi_2, d.detuning, Gamma, gamma_t);
    const double g1 = 3.3e6 * (u01(rng) - 0.5), g2 = 5.1e6 * (u01(rng) - 0.5);
    CHECK(rel(time_averaged_force(sol, d.rabi_1 * g1, d.rabi_2 * g2),
              lowest_order_force(s1, s2, g1, g2, d.detuning, Gamma, gamma_t)) < 1e-10);
    CHECK(rel(excited_population(sol), lowest_order_population(s1, s2)) < 1e-10);
  }
}

TEST_CASE("conjugation symmetries and dual population") {
  for (const auto& d : {drive(0.3, 0.5, 3.0), drive(5.0, 2.5, 1.2), drive(10.0, 3.0, 1.0)}) {
    const auto sol = converge_cutoff(d);
    for (int n = -sol.cutoff; n <= sol.cutoff; ++n) {
      CHECK(std::abs(sol.w_at(n) - std::conj(sol.w_at(-n))) < 1e-12);
      CHECK(std::abs(sol.v_at(n) - std::conj(sol.u_at(-n))) < 1e-12);
    }
    CHECK(std::abs(excited_population(sol) - excited_population_from_coherences(sol)) < 1e-10);
    CHECK(sol.w_at(0).real() >= -1.0);
    CHECK(sol.w_at(0).real() <= 0.0);
    const auto f = time_averaged_force_complex(sol, d.rabi_1 * 2e6, d.rabi_2 * -3e6);
    CHECK(std::abs(f.imag()) <= 1e-10 * std::abs(f.real()));
  }
}

TEST_CASE("cutoff convergence") {
  CHECK(converge_cutoff(drive(0.05, 1.0, 10.0)).cutoff <= 2);
  const auto strong = converge_cutoff(drive(10.0, 1.0, 1.0));
  CHECK(strong.cutoff > 2);
  CHECK(strong.converged);
  // Residual stays at round-off level as the cutoff grows.
  for (int n : {1, 4, 16, 64}) {
    CHECK(solve_bloch_fourier(drive(10.0, 1.0, 1.0), n).residual < 1e-12);
  }
  CHECK_THROWS_AS(solve_bloch_fourier(drive(1.0, 1.0, 1.0), -1), levitrap::Error);
}

TEST_CASE("lowest order and full solution meet in the weak-drive limit") {
  double last_gap = 1.0;
  for (double rabi : {0.3, 0.1, 0.03, 0.01}) {
    const auto d = drive(rabi, 1.3, 2.0);
    const auto full = converge_cutoff(d);
    const double s1 = oracles::mono_saturation(d.rabi_1, d.detuning, Gamma, gamma_t);
    const double s2 = oracles::mono_saturation(d.rabi_2, d.detuning, Gamma, gamma_t);
    const double gap = rel(excited_population(full), lowest_order_population(s1, s2));
    CHECK(gap < last_gap);
    last_gap = gap;
  }
  CHECK(last_gap < 1e-3);
}

TEST_CASE("lowest-order force: symmetry and limits") {
  CHECK(lowest_order_force(0.4, 0.4, 2e6, 2e6, 1e10, Gamma, gamma_t) == 0.0);
  const double f = lowest_order_force(0.4, 0.9, 2e6, -3e6, 1e10, Gamma, gamma_t);
  CHECK(lowest_order_force(0.9, 0.4, -3e6, 2e6, -1e10, Gamma, gamma_t) == doctest::Approx(f));
  const double mono = hbar * 1e10 * Gamma / (2.0 * gamma_t) * 0.4 * 2e6 / 1.4;
  CHECK(lowest_order_force(0.4, 0.0, 2e6, 7e6, 1e10, Gamma, gamma_t) ==
        doctest::Approx(mono).epsilon(1e-14));
}

TEST_CASE("multimode lowest order agrees with the symmetric pair") {
  const double det = 4e10;
  const std::vector<ModeDrive> modes{{2e9, -4.7e6, -det}, {3e9, 3.5e6, det}};
  const double s1 = mode_saturation(modes[0], Gamma, gamma_t);
  const double s2 = mode_saturation(modes[1], Gamma, gamma_t);
  CHECK(s1 == doctest::Approx(oracles::mono_saturation(2e9, det, Gamma, gamma_t)));
  CHECK(multimode_force(modes, Gamma, gamma_t) ==
        doctest::Approx(lowest_order_force(s1, s2, -4.7e6, 3.5e6, det, Gamma, gamma_t)));
  CHECK(multimode_population(modes, Gamma, gamma_t) ==
        doctest::Approx(lowest_order_population(s1, s2)));
  const std::vector<ModeDrive> one{modes[1]};
  CHECK(independent_modes_force(one, Gamma, gamma_t) ==
        doctest::Approx(multimode_force(one, Gamma, gamma_t)));
  CHECK(independent_modes_force(one, Gamma, gamma_t) ==
        doctest::Approx(oracles::mono_force(3e9, 3.5e6, det, Gamma, gamma_t)));
}

TEST_CASE("ODE oracle agrees with the Fourier solution") {
  for (const auto& d : {drive(0.5, 1.0, 2.0, 1.0e9, 1.5e9), drive(3.0, 2.0, 1.0, 1.0e9, 0.8e9),
                        drive(0.02, 0.4, 30.0, 1.0e9, 2.0e9)}) {
    const double g1 = d.rabi_1 * -4.0e6, g2 = d.rabi_2 * 3.0e6;
    const auto sol = converge_cutoff(d);
    const auto ode = oracles::bloch_ode_steady_state(
        {d.rabi_1, d.rabi_2, d.detuning, d.linewidth, d.transverse_decay}, g1, g2);
    CHECK(ode.settled);
    CHECK(rel(excited_population(sol), ode.excited_population()) < 1e-6);
    CHECK(rel(sol.w_at(0).real(), ode.w0()) < 1e-6);
    CHECK(rel(time_averaged_force(sol, g1, g2), ode.force) < 1e-6);
  }
}
