#include <cmath>

#include "doctest.h"
#include "levitrap/constants.hpp"
#include "levitrap/error.hpp"
#include "levitrap/materials.hpp"
#include "oracles.hpp"

using namespace levitrap::materials;
using namespace levitrap::constants;

TEST_CASE("SiV zero-phonon line") {
  CHECK(siv_wavelength(0.0) == doctest::Approx(737e-9).epsilon(1e-15));
  CHECK(siv_transition(0.0) == doctest::Approx(2.556e15).epsilon(1e-3));
  CHECK(std::abs(siv_wavelength(1.0) - siv_wavelength(0.0)) < 1e-15);
  const double by_hand = (737.0 + 19.2e-8 * std::exp(2.78 * std::log(587.0))) * 1e-9;
  CHECK(siv_wavelength(587.0) == doctest::Approx(by_hand).epsilon(1e-12));
}

TEST_CASE("SiV linewidth and dephasing") {
  CHECK(siv_linewidth(0.0) / two_pi == doctest::Approx(1e9 / 9.74).epsilon(1e-14));
  const double kT = boltzmann * 300.0;
  const double at300 = two_pi * 1e9 / 9.74 * (1.0 + 3.3 * std::exp(-0.055 * elementary_charge / kT));
  CHECK(siv_linewidth(300.0) == doctest::Approx(at300).epsilon(1e-13));
  CHECK(siv_dephasing(0.0) / two_pi == doctest::Approx(16.39e6).epsilon(1e-14));
  CHECK(siv_dephasing(100.0) / two_pi == doctest::Approx((16.39 + 1.9e-2 * 1e6) * 1e6).epsilon(1e-13));
}

TEST_CASE("temperature fits reject values outside [0, 3000] K") {
  CHECK_THROWS_AS(siv_wavelength(-1.0), levitrap::Error);
  CHECK_THROWS_AS(siv_linewidth(3001.0), levitrap::Error);
  CHECK_THROWS_AS(siv_dephasing(std::nan("")), levitrap::Error);
  try {
    siv_transition(4000.0);
  } catch (const levitrap::Error& e) {
    CHECK(e.code() == levitrap::ErrorCode::out_of_range);
  }
}

TEST_CASE("dipole moment inverts the free-space rate") {
  const double d = siv_dipole_moment(0.0, 2.4);
  const double omega = siv_transition(0.0);
  const double gamma0 = std::pow(omega, 3) * d * d / (3.0 * pi * epsilon0 * hbar * std::pow(speed_of_light, 3));
  CHECK(gamma0 == doctest::Approx(siv_linewidth(0.0) / 2.4).epsilon(1e-12));
  CHECK(d > 1e-30);
  CHECK(d < 1e-28);
  CHECK(siv_emitter(1e27).dipole_moment(300.0) == doctest::Approx(siv_dipole_moment(300.0, 2.4)));
  CHECK_THROWS_AS(siv_dipole_moment(300.0, 0.0), levitrap::Error);
}

TEST_CASE("gamma >= Gamma/2 holds from 13 K upward") {
  const auto em = siv_emitter(1e27);
  for (double T = 13.0; T <= 3000.0; T += 7.0) {
    CHECK(em.pure_dephasing(T) >= 0.0);
  }
  // The low-temperature fits are mutually inconsistent below about 12 K.
  CHECK(em.pure_dephasing(0.0) < 0.0);
}

TEST_CASE("diamond extinction") {
  const double omega_2100 = 2100.0 * 100.0 * two_pi * speed_of_light;
  const double expected = 15.0 / (4.0 * pi * 2100.0);
  CHECK(diamond_extinction(omega_2100) > expected);
  CHECK(diamond_extinction(omega_2100) < expected * 1.02);
  CHECK(diamond_extinction(2e17) == doctest::Approx(1e-8).epsilon(1e-6));
  CHECK_THROWS_AS(diamond_extinction(0.0), levitrap::Error);
}

TEST_CASE("sphere derived quantities") {
  const auto s = nanodiamond_siv();
  CHECK(s.volume() == doctest::Approx(4.0 / 3.0 * pi * std::pow(15e-9, 3)));
  CHECK(s.mass() == doctest::Approx(3515.0 * s.volume()));
  CHECK(s.emitter_count() == doctest::Approx(1.4e27 * s.volume()));
  CHECK(s.emitter_count() == doctest::Approx(19792.0).epsilon(1e-3));
  CHECK(s.local_field_factor() == doctest::Approx((2.4 * 2.4 + 2.0) / 3.0));
  CHECK(s.absorption_factor(2e15) > 0.0);
  CHECK(sphere_preset("nanodiamond-siv").radius == 15e-9);
  CHECK_THROWS_AS(sphere_preset("gold"), levitrap::Error);
}

TEST_CASE("silica on the imaginary axis") {
  CHECK(silica_epsilon_imag_axis(0.0) == doctest::Approx(1.0 + 0.6961663 + 0.4079426 + 0.8974794));
  double previous = silica_epsilon_imag_axis(0.0);
  for (double x = 1e11; x < 1e19; x *= 1.7) {
    const double eps = silica_epsilon_imag_axis(x);
    CHECK(eps == doctest::Approx(oracles::silica_epsilon_oracle(x)).epsilon(1e-12));
    CHECK(eps >= 1.0);
    CHECK(eps <= previous);
    previous = eps;
  }
  CHECK(silica_epsilon_imag_axis(1e18) - 1.0 < 1e-3);
  CHECK(vacuum_half_space().epsilon_imag_axis(3e15) == 1.0);
  CHECK(half_space_preset("silica").name == "silica");
  CHECK_THROWS_AS(half_space_preset("glass"), levitrap::Error);
  CHECK_THROWS_AS(silica_epsilon_imag_axis(-1.0), levitrap::Error);
}
