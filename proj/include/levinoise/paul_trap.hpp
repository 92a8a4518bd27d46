#pragma once

#include "levinoise/core.hpp"

namespace levinoise {

/// Ideal harmonic trap at the secular frequency plus a white bias-voltage
/// force floor. Micromotion is not modelled.
struct TrapSpec {
  double secular_frequency = 1e3;      // Hz
  double electrode_distance = 500e-6;  // m
  double bias_voltage_noise = 0.0;     // V/sqrt(Hz)
  double damping = 0.0;                // 1/s, 0 means "take it from the gas"

  double omega0() const noexcept { return 2.0 * constants::pi * secular_frequency; }
};

void validate(const TrapSpec& t);

/// (S_v q / d)^2 in N^2/Hz.
double bias_noise_force_psd(const TrapSpec& trap, double q);

/// beta = q/d, charge-to-current coupling in C/m.
double transduction_factor(const TrapSpec& trap, double q);

}  // namespace levinoise
