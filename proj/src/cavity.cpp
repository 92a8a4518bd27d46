#include "levinoise/cavity.hpp"

#include <algorithm>
#include <cmath>

#include "levinoise/csl.hpp"
#include "levinoise/parallel.hpp"

namespace levinoise {

using namespace constants;
using cd = std::complex<double>;

void validate(const CavitySpec& cav) {
  if (!(cav.length > 0.0 && cav.finesse > 0.0 && cav.waist > 0.0 && cav.wavelength > 0.0))
    throw DomainError("CavitySpec", "length, finesse, waist and wavelength must be > 0");
  if (!(cav.input_power >= 0.0)) throw DomainError("CavitySpec", "input power must be >= 0");
  if (!(cav.input_coupling > 0.0 && cav.input_coupling <= 1.0))
    throw DomainError("CavitySpec", "kappa_in/kappa must lie in (0, 1]");
  if (!(cav.efficiency > 0.0 && cav.efficiency <= 1.0))
    throw DomainError("CavitySpec", "homodyne efficiency must lie in (0, 1]");
  if (!(cav.frequency_noise >= 0.0)) throw DomainError("CavitySpec", "frequency noise must be >= 0");
}

CavityDerived cavity_derived(const CavitySpec& cav, const ParticleSpec& p, const TrapSpec& trap) {
  validate(cav);
  validate(p);
  validate(trap);
  CavityDerived d;
  const double k = cav.wavenumber();
  const double wl = cav.omega_laser();
  const double m = particle_mass(p);
  const double w0 = trap.omega0();

  d.kappa = cav.kappa();
  // The outcoupling mirror carries the remaining loss.
  d.kappa_in = cav.input_coupling * d.kappa;
  d.kappa_out = d.kappa - d.kappa_in;
  d.mode_volume = pi * cav.waist * cav.waist * cav.length / 4.0;
  d.polarizability = 4.0 * pi * epsilon0 * std::pow(p.radius, 3) * clausius_mossotti(p.eps_opt);
  d.g_o = d.polarizability.real() * wl / (2.0 * epsilon0 * d.mode_volume);
  d.x_zpf = std::sqrt(hbar / (2.0 * m * w0));
  d.g = d.x_zpf * k * d.g_o;
  d.coupling = d.g_o * k * std::abs(std::sin(2.0 * cav.phase));

  const double delta = cav.detuning;
  d.photons = 2.0 * d.kappa_in * cav.input_power / (hbar * wl * (d.kappa * d.kappa + delta * delta));
  d.omega_t = std::sqrt(2.0 * hbar * k * k * d.g_o * d.photons / m);

  const double cos_phi = std::cos(cav.phase);
  d.intensity = hbar * wl * c * d.photons * cos_phi * cos_phi / d.mode_volume;
  const double sigma_abs = k * d.polarizability.imag() / epsilon0;
  const double a_norm = std::abs(d.polarizability) / (4.0 * pi * epsilon0);
  const double sigma_s = 8.0 * pi / 3.0 * std::pow(k, 4) * a_norm * a_norm;
  d.absorbed_power = sigma_abs * d.intensity;
  d.scattered_power = sigma_s * d.intensity;
  // Dipole emission pattern projected on the cavity axis gives the 2/5.
  const double s_rec = 0.4 * 2.0 * hbar * k * d.scattered_power / c;
  d.recoil_heating = s_rec / (4.0 * m * hbar * w0);
  return d;
}

DispersiveShift dispersive_shift(double g_o, double phi, double k) {
  const double cp = std::cos(phi);
  return {g_o * cp * cp, -g_o * k * std::sin(2.0 * phi)};
}

OpticalTrap optical_trap_frequency(const CavitySpec& cav, const ParticleSpec& p,
                                   const TrapSpec& trap) {
  const auto d = cavity_derived(cav, p, trap);
  return {d.omega_t, d.omega_t >= trap.omega0()};
}

CavityOperatingPoint cavity_operating_point(const CavitySpec& cav, const ParticleSpec& p,
                                            const EnvironmentSpec& env, const TrapSpec& trap) {
  CavityOperatingPoint op;
  op.derived = cavity_derived(cav, p, trap);
  const auto& d = op.derived;
  if (!(d.kappa > 10.0 * trap.omega0()))
    throw DomainError("homodyne_psd", "cavity is not in the bad-cavity regime (kappa <= 10 w0)");

  op.thermal = thermal_force(p, env, d.absorbed_power);
  const double m = particle_mass(p);
  op.oscillator = {m, trap.omega0(),
                   trap.damping > 0.0 ? trap.damping : op.thermal.coupling.total_damping()};
  const double k = cav.wavenumber();
  const double delta = cav.detuning;
  const double kk = d.kappa * d.kappa + delta * delta;
  const double G = d.coupling;
  op.s_recoil = 0.4 * 2.0 * hbar * k * d.scattered_power / c;
  op.s_backaction = 4.0 * hbar * hbar * G * G * d.photons * d.kappa / kk;
  op.s_bias = bias_noise_force_psd(trap, p.charge);
  if (d.photons > 0.0 && G > 0.0)
    op.s_xx_shot = kk / (4.0 * cav.efficiency * d.kappa_out * d.photons * G * G);
  else
    op.s_xx_shot = HUGE_VAL;
  return op;
}

double frequency_noise_floor(const CavitySpec& cav, const CavityDerived& d, double f) {
  if (!(f > 0.0)) throw DomainError("frequency_noise_floor", "frequency must be > 0");
  if (!(d.coupling > 0.0)) return HUGE_VAL;
  const double s_nu = cav.frequency_noise / (f * f);
  return 4.0 * pi * pi * s_nu / (d.coupling * d.coupling);
}

namespace {

cd spring_self_energy(const CavityOperatingPoint& op, const CavitySpec& cav, double omega) {
  const auto& d = op.derived;
  const double delta = cav.detuning;
  const double G = d.coupling;
  const cd i(0.0, 1.0);
  return i * hbar * G * G * d.photons *
         (1.0 / (d.kappa - i * (delta + omega)) - 1.0 / (d.kappa + i * (delta - omega)));
}

}  // namespace

std::complex<double> effective_susceptibility(const CavityOperatingPoint& op, const CavitySpec& cav,
                                              double omega) {
  const cd chi = susceptibility(op.oscillator, omega);
  const cd sigma = spring_self_energy(op, cav, omega);
  if (sigma == 0.0) return chi;
  return 1.0 / (1.0 / chi + sigma);
}

OpticalSpring optical_spring(const CavityOperatingPoint& op, const CavitySpec& cav) {
  const double w0 = op.oscillator.omega0;
  const double m = op.oscillator.mass;
  const cd s = spring_self_energy(op, cav, w0);
  return {s.real() / (2.0 * m * w0), -s.imag() / (m * w0)};
}

NoiseSpectrum homodyne_psd(const CavitySpec& cav, const ParticleSpec& p, const EnvironmentSpec& env,
                           const TrapSpec& trap, const FrequencyGrid& grid) {
  const auto op = cavity_operating_point(cav, p, env, trap);
  const std::size_t n = grid.size();
  std::vector<double> quantum(n), thermal(n), bias(n), fn(n), shot(n, 1.0);
  const bool dark = !std::isfinite(op.s_xx_shot);
  for (std::size_t i = 0; i < n; ++i) {
    if (dark) {
      quantum[i] = thermal[i] = bias[i] = fn[i] = 0.0;
      continue;
    }
    const double w = 2.0 * pi * grid[i];
    const double chi2 = std::norm(effective_susceptibility(op, cav, w));
    quantum[i] = (op.s_recoil + op.s_backaction) * chi2 / op.s_xx_shot;
    thermal[i] = op.thermal.total() * chi2 / op.s_xx_shot;
    bias[i] = op.s_bias * chi2 / op.s_xx_shot;
    fn[i] = frequency_noise_floor(cav, op.derived, grid[i]) / op.s_xx_shot;
  }
  return NoiseSpectrum(grid, SpectrumUnits::shot_normalized,
                       {{"quantum", std::move(quantum)},
                        {"thermal", std::move(thermal)},
                        {"trap-bias", std::move(bias)},
                        {"frequency-noise", std::move(fn)},
                        {"shot", std::move(shot)}});
}

std::vector<SensitivityReport> sensitivity_sweep(const CavitySpec& cav, const ParticleSpec& p,
                                                 const EnvironmentSpec& env, const TrapSpec& trap,
                                                 const std::vector<double>& powers, double r_c,
                                                 CavityFloor floor, unsigned threads) {
  if (powers.empty()) throw DomainError("cavity sensitivity_sweep", "empty power grid");
  auto point = [&](std::size_t i) {
    CavitySpec c = cav;
    c.input_power = powers[i];
    const auto op = cavity_operating_point(c, p, env, trap);
    SensitivityReport r;
    r.scheme = "cavity";
    r.floor = floor == CavityFloor::shot ? "shot" : "frequency-noise";
    r.parameter = "input_power_W";
    r.value = powers[i];
    r.r_c = r_c;
    r.s_ff = op.s_ff_total();
    r.lambda_min = lambda_min(p, r_c, r.s_ff);
    r.s_xx = op.s_xx_shot;
    if (floor == CavityFloor::frequency_noise)
      r.s_xx += frequency_noise_floor(c, op.derived, trap.secular_frequency);
    r.bandwidth = measurement_bandwidth(op.oscillator, {r.s_xx, r.s_ff}).delta_f;
    r.temperature = op.thermal.state.temperature;

    const std::pair<const char*, double> channels[] = {
        {"gas", op.thermal.gas},       {"blackbody-recoil", op.thermal.blackbody},
        {"photon-recoil", op.s_recoil}, {"backaction", op.s_backaction},
        {"trap-bias", op.s_bias}};
    r.dominant = std::max_element(std::begin(channels), std::end(channels),
                                  [](auto& a, auto& b) { return a.second < b.second; })
                     ->first;
    if (op.derived.omega_t >= trap.omega0()) r.flags.push_back("optical-trap-exceeds-secular");
    const auto lin = linearity_check(op.oscillator, r.temperature, c.wavelength);
    if (!lin.pass) r.flags.push_back("nonlinear-readout");
    if (std::abs(c.detuning) > detuning_limit(c, p, trap, op.oscillator.damping))
      r.flags.push_back("detuning-above-limit");
    return r;
  };
  return parallel_map<SensitivityReport>(powers.size(), threads, point);
}

LinearityResult linearity_check(const OscillatorSpec& osc, double t_eff, double wavelength) {
  validate(osc);
  if (!(t_eff >= 0.0) || !(wavelength > 0.0))
    throw DomainError("linearity_check", "T_eff must be >= 0 and wavelength > 0");
  LinearityResult r;
  r.dx_rms = std::sqrt(k_B * t_eff / (osc.mass * osc.omega0 * osc.omega0));
  const double limit = wavelength / 16.0;
  r.pass = r.dx_rms <= limit;
  // Cold damping at fixed force noise lowers T_eff, hence dx^2, in proportion.
  r.required_factor = std::max(1.0, (r.dx_rms / limit) * (r.dx_rms / limit));
  return r;
}

double detuning_limit(const CavitySpec& cav, const ParticleSpec& p, const TrapSpec& trap,
                      double gamma_tot) {
  if (!(gamma_tot >= 0.0)) throw DomainError("detuning_limit", "damping must be >= 0");
  const auto d = cavity_derived(cav, p, trap);
  if (!(cav.input_power > 0.0)) return HUGE_VAL;
  const double k = cav.wavenumber();
  const double m = particle_mass(p);
  const double k4 = std::pow(d.kappa, 4);
  return c / (2.0 * cav.input_power) * m * trap.omega0() * k4 /
         (2.0 * d.g_o * d.g_o * k * d.kappa_in) * gamma_tot;
}

}  // namespace levinoise
