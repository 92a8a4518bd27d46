#pragma once

#include <numbers>

namespace levinoise::constants {

// CODATA 2018 exact or recommended values, SI units.
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_B = 1.380649e-23;           // J/K
inline constexpr double c = 299792458.0;              // m/s
inline constexpr double e = 1.602176634e-19;          // C
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double amu = 1.66053906660e-27;      // kg

// Reference mass of the collapse noise coupling (one atomic mass unit).
inline constexpr double m0 = amu;

// Riemann zeta(5).
inline constexpr double zeta5 = 1.0369277551433699263;

inline constexpr double pi = std::numbers::pi;

// Pressure unit used throughout the literature on this problem.
inline constexpr double mbar = 100.0;  // Pa

}  // namespace levinoise::constants
