#include <cmath>

#include "doctest.h"
#include "levitrap/casimir.hpp"
#include "levitrap/constants.hpp"
#include "levitrap/error.hpp"
#include "levitrap/materials.hpp"
#include "oracles.hpp"

using namespace levitrap::casimir;
using namespace levitrap::constants;
using levitrap::materials::silica_half_space;

namespace {

const double omega0 = levitrap::materials::siv_transition(300.0);
const double dipole = levitrap::materials::siv_dipole_moment(300.0, 2.4);

double U(double z, const PolarizabilityFn& a) { return cp_potential({z, silica_half_space(), a}); }

}  // namespace

TEST_CASE("polarizability on the imaginary axis") {
  CHECK(alpha_emitter_imag_axis(0.0, dipole, omega0) ==
        doctest::Approx(2.0 * dipole * dipole / (3.0 * hbar * omega0)));
  CHECK(alpha_emitter_imag_axis(omega0, dipole, omega0) ==
        doctest::Approx(dipole * dipole / (3.0 * hbar * omega0)));
  CHECK(sphere_polarizability(15e-9, 2.4)(1e16) ==
        doctest::Approx(oracles::alpha_s_oracle(15e-9, 2.4)));
}

TEST_CASE("vacuum half space gives no potential") {
  const CasimirInputs in{100e-9, levitrap::materials::vacuum_half_space(),
                         emitter_polarizability(dipole, omega0)};
  CHECK(cp_potential(in) == 0.0);
  CHECK(cp_force(in) == 0.0);
}

TEST_CASE("potential against the dense oracle") {
  const auto eps = levitrap::materials::silica_epsilon_imag_axis;
  for (double z : {50e-9, 300e-9}) {
    const auto emitter = emitter_polarizability(dipole, omega0);
    const auto ref = oracles::dense_cp_quadrature(z, eps, emitter, 3001);
    CHECK(U(z, emitter) == doctest::Approx(ref.value).epsilon(1e-4));
    const auto sphere = sphere_polarizability(15e-9, 2.4);
    CHECK(U(z, sphere) == doctest::Approx(oracles::dense_cp_quadrature(z, eps, sphere, 3001).value)
                              .epsilon(1e-4));
  }
}

TEST_CASE("force is minus the derivative and attraction") {
  const auto a = emitter_polarizability(dipole, omega0);
  for (double z : {40e-9, 150e-9, 800e-9}) {
    const double h = 1e-4 * z;
    const double numeric = -(U(z + h, a) - U(z - h, a)) / (2.0 * h);
    const double f = cp_force({z, silica_half_space(), a});
    CHECK(f < 0.0);
    CHECK(f == doctest::Approx(numeric).epsilon(1e-5));
    CHECK(U(z, a) < 0.0);
  }
}

TEST_CASE("linearity in alpha and far-field decay") {
  const auto a = sphere_polarizability(15e-9, 2.4);
  const PolarizabilityFn twice = [&](double x) { return 2.0 * a(x); };
  CHECK(U(200e-9, twice) == doctest::Approx(2.0 * U(200e-9, a)).epsilon(1e-10));
  // Retarded regime: U z^3 keeps shrinking.
  const auto e = emitter_polarizability(dipole, omega0);
  double previous = std::abs(U(300e-9, e)) * std::pow(300e-9, 3);
  for (double z : {600e-9, 1200e-9, 2400e-9}) {
    const double scaled = std::abs(U(z, e)) * std::pow(z, 3);
    CHECK(scaled < previous);
    previous = scaled;
  }
  CHECK_THROWS_AS(U(0.0, a), levitrap::Error);
  CHECK_THROWS_AS(U(-1e-9, a), levitrap::Error);
}

TEST_CASE("tabulated profile") {
  const auto a = emitter_polarizability(dipole, omega0);
  const CasimirProfile profile(a, silica_half_space(), 20e-9, 3e-6);
  for (double z : {23e-9, 77.7e-9, 311e-9, 1.9e-6}) {
    CHECK(profile.potential(z) == doctest::Approx(U(z, a)).epsilon(1e-5));
    CHECK(profile.force(z) ==
          doctest::Approx(cp_force({z, silica_half_space(), a})).epsilon(1e-4));
  }
  CHECK_THROWS_AS(profile.potential(10e-9), levitrap::Error);
  const CasimirProfile none(a, levitrap::materials::vacuum_half_space(), 20e-9, 3e-6);
  CHECK(none.potential(100e-9) == 0.0);
}

TEST_CASE("emitter table scales with d^2 and tracks omega0") {
  const EmitterCasimirTable table(silica_half_space(), 20e-9, 3e-6);
  const double z = 250e-9;
  const double exact = U(z, emitter_polarizability(dipole, omega0 * 1.0013));
  CHECK(table.potential(z, dipole, omega0 * 1.0013) == doctest::Approx(exact).epsilon(1e-5));
  CHECK(table.potential(z, 2.0 * dipole, omega0) ==
        doctest::Approx(4.0 * table.potential(z, dipole, omega0)).epsilon(1e-12));
  CHECK(table.force(z, dipole, omega0) ==
        doctest::Approx(cp_force({z, silica_half_space(), emitter_polarizability(dipole, omega0)}))
            .epsilon(1e-4));
}
