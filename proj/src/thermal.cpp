#include "levinoise/thermal.hpp"

#include <cmath>
#include <limits>

namespace levinoise {

using namespace constants;

namespace {
constexpr double kUpperBracket = 5000.0;
constexpr int kMaxIter = 200;

void check_temperature(const char* op, double T) {
  if (!(T > 0.0)) throw DomainError(op, "temperature must be > 0");
}
}  // namespace

double gas_heat_flow(const ParticleSpec& p, const EnvironmentSpec& env, double T) {
  check_temperature("gas_heat_flow", T);
  const double gs = env.heat_capacity_ratio;
  const double v_t = gas_thermal_speed(env);
  return -env.thermal_accommodation * pi * p.radius * p.radius * env.pressure * v_t /
         (2.0 * env.gas_temperature) * (gs + 1.0) / (gs - 1.0) * (T - env.gas_temperature);
}

double blackbody_heat_flow(const ParticleSpec& p, const EnvironmentSpec& env, double T) {
  check_temperature("blackbody_heat_flow", T);
  const double coeff = 72.0 * zeta5 / (pi * pi) * particle_volume(p) * std::pow(k_B, 5) /
                       (c * c * c * std::pow(hbar, 4)) * p.eps_abs;
  return -coeff * (std::pow(T, 5) - std::pow(env.gas_temperature, 5));
}

double equilibrium_temperature(const ParticleSpec& p, const EnvironmentSpec& env, double w_abs) {
  validate(p);
  validate(env);
  if (!(w_abs >= 0.0)) throw DomainError("equilibrium_temperature", "W_abs must be >= 0");
  const double tg = env.gas_temperature;
  if (w_abs == 0.0) return tg;
  auto balance = [&](double T) {
    return gas_heat_flow(p, env, T) + blackbody_heat_flow(p, env, T) + w_abs;
  };
  double lo = tg, hi = kUpperBracket;
  if (balance(hi) > 0.0)
    throw DomainError("equilibrium_temperature", "absorbed power melts the particle (T > 5000 K)");
  // Run to machine resolution: a loose tolerance on T leaves a residual in the
  // balance several times W_abs * 1e-9 because the flows are steep.
  for (int it = 0; it < kMaxIter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    if (balance(mid) > 0.0) lo = mid;
    else hi = mid;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return 0.5 * (lo + hi);
  }
  throw NumericError("equilibrium_temperature", "bisection did not converge in 200 iterations");
}

ThermalState thermal_state(const ParticleSpec& p, const EnvironmentSpec& env, double w_abs) {
  ThermalState s;
  s.absorbed_power = w_abs;
  s.temperature = equilibrium_temperature(p, env, w_abs);
  s.gas_heat_flow = gas_heat_flow(p, env, s.temperature);
  s.blackbody_heat_flow = blackbody_heat_flow(p, env, s.temperature);
  return s;
}

GasCoupling gas_coupling(const ParticleSpec& p, const EnvironmentSpec& env, double T) {
  validate(p);
  validate(env);
  if (!(T >= env.gas_temperature))
    throw DomainError("gas_coupling", "internal temperature below the gas temperature");
  GasCoupling g;
  g.v_t = gas_thermal_speed(env);
  g.t_i = env.gas_temperature;
  g.t_e = g.t_i + env.momentum_accommodation * (T - g.t_i);
  g.gamma_i = 4.0 * pi / 3.0 * env.gas_molecular_mass * p.radius * p.radius * g.v_t *
              env.pressure / (k_B * g.t_i * particle_mass(p));
  g.gamma_e = pi / 8.0 * std::sqrt(g.t_e / g.t_i) * g.gamma_i;
  return g;
}

double gas_force_psd(const GasCoupling& g, double m_s) {
  if (!(m_s > 0.0)) throw DomainError("gas_force_psd", "mass must be > 0");
  return 4.0 * k_B * m_s * (g.gamma_i * g.t_i + g.gamma_e * g.t_e);
}

double blackbody_recoil_psd(const ParticleSpec& p, const EnvironmentSpec&, double T) {
  check_temperature("blackbody_recoil_psd", T);
  return 160.0 / pi * std::pow(p.radius, 3) * std::pow(k_B, 6) /
         (std::pow(c, 5) * std::pow(hbar, 4)) * p.eps_abs * std::pow(T, 6);
}

ThermalForce thermal_force(const ParticleSpec& p, const EnvironmentSpec& env, double w_abs) {
  ThermalForce f;
  f.state = thermal_state(p, env, w_abs);
  f.coupling = gas_coupling(p, env, f.state.temperature);
  f.gas = gas_force_psd(f.coupling, particle_mass(p));
  f.blackbody = blackbody_recoil_psd(p, env, f.state.temperature);
  return f;
}

NoiseSpectrum thermal_force_psd(const ParticleSpec& p, const EnvironmentSpec& env, double w_abs,
                                const FrequencyGrid& grid) {
  const auto f = thermal_force(p, env, w_abs);
  return NoiseSpectrum(grid, SpectrumUnits::force,
                       {{"gas", std::vector<double>(grid.size(), f.gas)},
                        {"blackbody-recoil", std::vector<double>(grid.size(), f.blackbody)}});
}

}  // namespace levinoise
