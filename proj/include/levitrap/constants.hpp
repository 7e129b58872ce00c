#pragma once

// SI values (CODATA 2018 exact/recommended).
namespace levitrap::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double speed_of_light = 299792458.0;    // m/s
inline constexpr double epsilon0 = 8.8541878128e-12;     // F/m
inline constexpr double boltzmann = 1.380649e-23;        // J/K
inline constexpr double elementary_charge = 1.602176634e-19;
inline constexpr double standard_gravity = 9.80665;      // m/s^2

}  // namespace levitrap::constants
