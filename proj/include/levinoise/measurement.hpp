#pragma once

#include <complex>
#include <cstdint>

#include "levinoise/core.hpp"

namespace levinoise {

struct OscillatorSpec {
  double mass = 0.0;     // kg
  double omega0 = 0.0;   // rad/s
  double damping = 0.0;  // Gamma, 1/s

  double quality_factor() const noexcept { return omega0 / damping; }
};

void validate(const OscillatorSpec& o);

/// White imprecision and force levels of a continuous measurement.
struct MeasurementBudget {
  double s_xx = 0.0;  // m^2/Hz
  double s_ff = 0.0;  // N^2/Hz
  double n_factor() const noexcept { return std::sqrt(s_xx * s_ff) / constants::hbar; }
};

/// chi = 1 / (m (w0^2 - w^2 - i w Gamma)).
std::complex<double> susceptibility(const OscillatorSpec& osc, double omega);

struct Bandwidth {
  double delta_f = 0.0;  // closed form, Hz
  double f1 = 0.0;       // exact crossings of S_ff|chi|^2 = S_xx, Hz
  double f2 = 0.0;
  bool resolved = true;  // false: response never clears the imprecision floor

  double exact_width() const noexcept { return f2 - f1; }
};

Bandwidth measurement_bandwidth(const OscillatorSpec& osc, const MeasurementBudget& b);

/// Phonon heating rate S_ff / (4 m hbar w0).
double heating_rate(const OscillatorSpec& osc, double s_ff);

double continuous_estimate_uncertainty(double delta_f, double t_m);

/// sqrt(n1 + gamma t + sigma_n1^2) / (gamma t).
double stroboscopic_estimate_uncertainty(double gamma, double t, double n1, double sigma_n1);

double effective_rate_with_N(double gamma, double n);

struct ReheatingStatistics {
  std::size_t trajectories = 0;
  double gamma_true = 0.0;
  double gamma_mean = 0.0;
  double gamma_std = 0.0;
  double relative_sigma() const noexcept { return gamma_std / gamma_mean; }
};

/// Monte Carlo of the stroboscopic protocol: start at rest, evolve freely for
/// time t under white force noise S_ff (exact Gaussian propagation of the
/// damped oscillator in `steps` slices), read the energy exactly and estimate
/// gamma = n2 / t. Trajectory i draws from its own generator seeded by
/// (seed, i), so the result is independent of `threads`.
ReheatingStatistics simulate_reheating(const OscillatorSpec& osc, double s_ff, double t,
                                       std::size_t trajectories, std::uint64_t seed,
                                       unsigned steps = 8, unsigned threads = 1);

}  // namespace levinoise
