#pragma once

#include "levinoise/core.hpp"

namespace levinoise {

struct ThermalState {
  double temperature = 0.0;    // K
  double absorbed_power = 0.0;  // W
  double gas_heat_flow = 0.0;   // W, negative when heat leaves the particle
  double blackbody_heat_flow = 0.0;
};

/// Two-bath gas coupling: impinging molecules at T_i, re-emitted at T_e.
struct GasCoupling {
  double gamma_i = 0.0;  // 1/s
  double gamma_e = 0.0;  // 1/s
  double t_i = 0.0;      // K
  double t_e = 0.0;      // K
  double v_t = 0.0;      // m/s

  double total_damping() const noexcept { return gamma_i + gamma_e; }
};

double gas_heat_flow(const ParticleSpec& p, const EnvironmentSpec& env, double T);
double blackbody_heat_flow(const ParticleSpec& p, const EnvironmentSpec& env, double T);

/// Internal temperature balancing absorbed power against gas and radiative
/// cooling. Bisection on [T_g, 5000 K].
double equilibrium_temperature(const ParticleSpec& p, const EnvironmentSpec& env, double w_abs);
ThermalState thermal_state(const ParticleSpec& p, const EnvironmentSpec& env, double w_abs);

GasCoupling gas_coupling(const ParticleSpec& p, const EnvironmentSpec& env, double T);

/// 4 k_B m_s (Gamma_i T_i + Gamma_e T_e).
double gas_force_psd(const GasCoupling& g, double m_s);

/// Recoil from thermal emission, white.
double blackbody_recoil_psd(const ParticleSpec& p, const EnvironmentSpec& env, double T);

/// White thermal force levels at the equilibrium temperature for w_abs.
struct ThermalForce {
  ThermalState state;
  GasCoupling coupling;
  double gas = 0.0;
  double blackbody = 0.0;
  double total() const noexcept { return gas + blackbody; }
};

ThermalForce thermal_force(const ParticleSpec& p, const EnvironmentSpec& env, double w_abs);

/// Channels "gas" and "blackbody-recoil" in N^2/Hz.
NoiseSpectrum thermal_force_psd(const ParticleSpec& p, const EnvironmentSpec& env, double w_abs,
                                const FrequencyGrid& grid);

}  // namespace levinoise
