#include "levinoise/tweezer.hpp"

#include <algorithm>
#include <cmath>

#include "levinoise/csl.hpp"
#include "levinoise/parallel.hpp"

namespace levinoise {

using namespace constants;

std::string_view to_string(TweezerGeometry g) {
  return g == TweezerGeometry::single_beam ? "single-beam" : "counter-propagating";
}

TweezerGeometry tweezer_geometry_from_string(std::string_view name) {
  if (name == "single-beam") return TweezerGeometry::single_beam;
  if (name == "counter-propagating") return TweezerGeometry::counter_propagating;
  throw DomainError("tweezer_geometry_from_string", "unknown geometry '" + std::string(name) + "'");
}

void validate(const TweezerSpec& tw) {
  if (!(tw.wavelength > 0.0)) throw DomainError("TweezerSpec", "wavelength must be > 0");
  if (!(tw.numerical_aperture > 0.0 && tw.numerical_aperture < 1.0))
    throw DomainError("TweezerSpec", "NA must lie in (0, 1)");
  if (!(tw.power >= 0.0)) throw DomainError("TweezerSpec", "power must be >= 0");
  if (!(tw.efficiency > 0.0 && tw.efficiency <= 1.0))
    throw DomainError("TweezerSpec", "efficiency must lie in (0, 1]");
  if (!(tw.nep >= 0.0) || !(tw.lo_power >= 0.0) || !(tw.lens_waist > 0.0))
    throw DomainError("TweezerSpec", "NEP, LO power must be >= 0 and lens waist > 0");
  if (!(tw.harmonic_region > 0.0))
    throw DomainError("TweezerSpec", "harmonic region must be > 0");
}

namespace {

std::complex<double> polarizability(const ParticleSpec& p) {
  return 4.0 * pi * epsilon0 * std::pow(p.radius, 3) * clausius_mossotti(p.eps_opt);
}

double focal_intensity(const TweezerSpec& tw) {
  const double w = tw.focal_waist();
  return 2.0 * tw.power / (pi * w * w);
}

}  // namespace

double scattering_cross_section(const ParticleSpec& p, double wavelength) {
  const double k = 2.0 * pi / wavelength;
  const double a = std::abs(polarizability(p)) / (4.0 * pi * epsilon0);
  return 8.0 * pi / 3.0 * std::pow(k, 4) * a * a;
}

double max_power(const TweezerSpec& tw, const TrapSpec& trap, const ParticleSpec& p) {
  validate(tw);
  validate(trap);
  validate(p);
  const double m = particle_mass(p);
  const double w0 = trap.omega0();
  if (tw.geometry == TweezerGeometry::single_beam) {
    const double wf = tw.focal_waist();
    const double force_per_watt = scattering_cross_section(p, tw.wavelength) * 2.0 /
                                  (pi * wf * wf) / c;
    return m * w0 * w0 * tw.harmonic_region / force_per_watt;
  }
  const double w = tw.lens_waist;
  const double a = polarizability(p).real() / epsilon0;
  // w_opt^2 = 2 (alpha/eps0) I0 / (c m w^2) with I0 = 2 P / (pi w^2).
  const double wopt2_per_watt = 2.0 * a * (2.0 / (pi * w * w)) / (c * m * w * w);
  return w0 * w0 / wopt2_per_watt;
}

double detection_slope(const TweezerSpec& tw, const ParticleSpec& p) {
  const double ps = scattering_cross_section(p, tw.wavelength) * focal_intensity(tw);
  return 2.0 * tw.efficiency * std::sqrt(ps * tw.lo_power) * tw.wavenumber();
}

double nep_displacement_floor(const TweezerSpec& tw, const ParticleSpec& p) {
  validate(tw);
  const double s = detection_slope(tw, p);
  if (tw.nep == 0.0) return 0.0;
  return s > 0.0 ? tw.nep * tw.nep / (s * s) : HUGE_VAL;
}

double shot_displacement_floor(const TweezerSpec& tw, const ParticleSpec& p) {
  validate(tw);
  const double ps = scattering_cross_section(p, tw.wavelength) * focal_intensity(tw);
  const double s = detection_slope(tw, p);
  const double omega = c * tw.wavenumber();
  return s > 0.0 ? 2.0 * hbar * omega * tw.efficiency * (ps + tw.lo_power) / (s * s) : HUGE_VAL;
}

TweezerOperatingPoint tweezer_operating_point(const TweezerSpec& tw, const ParticleSpec& p,
                                              const EnvironmentSpec& env, const TrapSpec& trap) {
  validate(tw);
  const double pmax = max_power(tw, trap, p);
  if (tw.power > pmax)
    throw DomainError("tweezer homodyne_psd", "power exceeds the " + std::string(to_string(tw.geometry)) +
                                                  " limit of the Paul trap");
  TweezerOperatingPoint op;
  const double I = focal_intensity(tw);
  const double k = tw.wavenumber();
  op.scattered_power = scattering_cross_section(p, tw.wavelength) * I;
  op.absorbed_power = k * polarizability(p).imag() / epsilon0 * I;
  op.thermal = thermal_force(p, env, op.absorbed_power);
  op.oscillator = {particle_mass(p), trap.omega0(),
                   trap.damping > 0.0 ? trap.damping : op.thermal.coupling.total_damping()};
  // Emission recoil projected on the axis plus the shot noise of the momentum
  // picked up from the beam.
  op.s_recoil = 0.4 * 2.0 * hbar * k * op.scattered_power / c;
  op.s_backaction = 2.0 * hbar * k * op.scattered_power / c;
  op.s_bias = bias_noise_force_psd(trap, p.charge);
  op.s_xx_shot = shot_displacement_floor(tw, p);
  op.s_xx_nep = nep_displacement_floor(tw, p);
  return op;
}

NoiseSpectrum homodyne_psd(const TweezerSpec& tw, const ParticleSpec& p, const EnvironmentSpec& env,
                           const TrapSpec& trap, const FrequencyGrid& grid) {
  const auto op = tweezer_operating_point(tw, p, env, trap);
  const std::size_t n = grid.size();
  std::vector<double> quantum(n, 0.0), thermal(n, 0.0), bias(n, 0.0), nep(n, 0.0), shot(n, 1.0);
  if (std::isfinite(op.s_xx_shot)) {
    for (std::size_t i = 0; i < n; ++i) {
      const double chi2 = std::norm(susceptibility(op.oscillator, 2.0 * pi * grid[i]));
      quantum[i] = (op.s_recoil + op.s_backaction) * chi2 / op.s_xx_shot;
      thermal[i] = op.thermal.total() * chi2 / op.s_xx_shot;
      bias[i] = op.s_bias * chi2 / op.s_xx_shot;
      nep[i] = op.s_xx_nep / op.s_xx_shot;
    }
  }
  return NoiseSpectrum(grid, SpectrumUnits::shot_normalized,
                       {{"quantum", std::move(quantum)},
                        {"thermal", std::move(thermal)},
                        {"trap-bias", std::move(bias)},
                        {"nep", std::move(nep)},
                        {"shot", std::move(shot)}});
}

std::vector<SensitivityReport> sensitivity_sweep(const TweezerSpec& tw, const ParticleSpec& p,
                                                 const EnvironmentSpec& env, const TrapSpec& trap,
                                                 const std::vector<double>& powers, double r_c,
                                                 TweezerFloor floor, unsigned threads) {
  if (powers.empty()) throw DomainError("tweezer sensitivity_sweep", "empty power grid");
  auto point = [&](std::size_t i) {
    TweezerSpec t = tw;
    t.power = powers[i];
    const auto op = tweezer_operating_point(t, p, env, trap);
    SensitivityReport r;
    r.scheme = "tweezer";
    r.floor = floor == TweezerFloor::shot ? "shot" : "nep";
    r.parameter = "power_W";
    r.value = powers[i];
    r.r_c = r_c;
    r.s_ff = op.s_ff_total();
    r.lambda_min = lambda_min(p, r_c, r.s_ff);
    r.s_xx = op.s_xx_shot + (floor == TweezerFloor::nep ? op.s_xx_nep : 0.0);
    r.bandwidth = measurement_bandwidth(op.oscillator, {r.s_xx, r.s_ff}).delta_f;
    r.temperature = op.thermal.state.temperature;
    const std::pair<const char*, double> channels[] = {
        {"gas", op.thermal.gas},        {"blackbody-recoil", op.thermal.blackbody},
        {"photon-recoil", op.s_recoil}, {"backaction", op.s_backaction},
        {"trap-bias", op.s_bias}};
    r.dominant = std::max_element(std::begin(channels), std::end(channels),
                                  [](auto& a, auto& b) { return a.second < b.second; })
                     ->first;
    if (t.geometry == TweezerGeometry::single_beam) r.flags.push_back("single-beam");
    return r;
  };
  return parallel_map<SensitivityReport>(powers.size(), threads, point);
}

}  // namespace levinoise
