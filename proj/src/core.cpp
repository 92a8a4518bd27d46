#include "levinoise/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace levinoise {

using constants::pi;

std::string_view to_string(Material m) {
  switch (m) {
    case Material::silica: return "silica";
    case Material::osmium: return "osmium";
    case Material::gold: return "gold";
    case Material::platinum: return "platinum";
    case Material::custom: return "custom";
  }
  return "custom";
}

Material material_from_string(std::string_view name) {
  for (auto m : {Material::silica, Material::osmium, Material::gold, Material::platinum,
                 Material::custom}) {
    if (to_string(m) == name) return m;
  }
  throw DomainError("material_from_string", "unknown material '" + std::string(name) + "'");
}

ParticleSpec ParticleSpec::preset(Material m, double radius, double charge) {
  ParticleSpec p;
  p.radius = radius;
  p.material = m;
  p.charge = charge;
  switch (m) {
    case Material::silica:
    case Material::custom:
      // Im(eps_opt) calibrated against the 20-70 K internal temperature range
      // of the low-finesse cavity sweep; it is not a measured value.
      p.density = 2200.0;
      p.eps_opt = {2.1, 9.0e-8};
      p.eps_abs = 0.1;
      break;
    // Metal permittivities below are indicative only; metals are meant for the
    // electrical readout where no optical field is present.
    case Material::osmium:
      p.density = 22590.0;
      p.eps_opt = {-10.0, 30.0};
      p.eps_abs = 1e-3;
      break;
    case Material::gold:
      p.density = 19300.0;
      p.eps_opt = {-48.4, 3.6};
      p.eps_abs = 1e-3;
      break;
    case Material::platinum:
      p.density = 21450.0;
      p.eps_opt = {-28.0, 38.0};
      p.eps_abs = 1e-3;
      break;
  }
  return p;
}

void validate(const ParticleSpec& p) {
  if (!(p.radius > 0.0)) throw DomainError("ParticleSpec", "radius must be > 0");
  if (!(p.density > 0.0)) throw DomainError("ParticleSpec", "density must be > 0");
  if (!(p.charge >= 0.0)) throw DomainError("ParticleSpec", "charge must be >= 0");
  if (p.eps_opt.imag() < 0.0) throw DomainError("ParticleSpec", "Im(eps_opt) must be >= 0");
  if (!(p.eps_abs >= 0.0)) throw DomainError("ParticleSpec", "eps_abs must be >= 0");
}

double particle_volume(const ParticleSpec& p) { return 4.0 / 3.0 * pi * std::pow(p.radius, 3); }

double particle_mass(const ParticleSpec& p) { return particle_volume(p) * p.density; }

std::complex<double> clausius_mossotti(std::complex<double> eps) {
  return (eps - 1.0) / (eps + 2.0);
}

double absorption_coefficient(std::complex<double> eps) { return clausius_mossotti(eps).imag(); }

std::string_view to_string(Gas g) {
  switch (g) {
    case Gas::helium: return "helium";
    case Gas::hydrogen: return "hydrogen";
    case Gas::nitrogen: return "nitrogen";
    case Gas::argon: return "argon";
  }
  return "helium";
}

Gas gas_from_string(std::string_view name) {
  for (auto g : {Gas::helium, Gas::hydrogen, Gas::nitrogen, Gas::argon}) {
    if (to_string(g) == name) return g;
  }
  throw DomainError("gas_from_string", "unknown gas '" + std::string(name) + "'");
}

EnvironmentSpec EnvironmentSpec::preset(Gas g, double pressure, double temperature) {
  EnvironmentSpec env;
  env.pressure = pressure;
  env.gas_temperature = temperature;
  switch (g) {
    case Gas::helium:
      env.gas_molecular_mass = 4.002602 * constants::amu;
      env.heat_capacity_ratio = 5.0 / 3.0;
      break;
    case Gas::hydrogen:
      env.gas_molecular_mass = 2.01588 * constants::amu;
      env.heat_capacity_ratio = 7.0 / 5.0;
      break;
    case Gas::nitrogen:
      env.gas_molecular_mass = 28.0134 * constants::amu;
      env.heat_capacity_ratio = 7.0 / 5.0;
      break;
    case Gas::argon:
      env.gas_molecular_mass = 39.948 * constants::amu;
      env.heat_capacity_ratio = 5.0 / 3.0;
      break;
  }
  return env;
}

void validate(const EnvironmentSpec& env) {
  if (!(env.pressure >= 0.0)) throw DomainError("EnvironmentSpec", "pressure must be >= 0");
  if (!(env.gas_temperature > 0.0))
    throw DomainError("EnvironmentSpec", "gas temperature must be > 0");
  if (!(env.gas_molecular_mass > 0.0))
    throw DomainError("EnvironmentSpec", "gas molecular mass must be > 0");
  if (!(env.thermal_accommodation > 0.0 && env.thermal_accommodation <= 1.0))
    throw DomainError("EnvironmentSpec", "thermal accommodation must lie in (0, 1]");
  if (!(env.momentum_accommodation >= 0.0 && env.momentum_accommodation <= 1.0))
    throw DomainError("EnvironmentSpec", "momentum accommodation must lie in [0, 1]");
  if (!(env.heat_capacity_ratio > 1.0))
    throw DomainError("EnvironmentSpec", "heat capacity ratio must be > 1");
}

double gas_thermal_speed(const EnvironmentSpec& env) {
  return std::sqrt(8.0 * constants::k_B * env.gas_temperature / (pi * env.gas_molecular_mass));
}

FrequencyGrid::FrequencyGrid(std::vector<double> freqs, Spacing spacing)
    : freqs_(std::move(freqs)), spacing_(spacing) {
  if (freqs_.empty()) throw DomainError("FrequencyGrid", "grid must not be empty");
  if (!(freqs_.front() > 0.0)) throw DomainError("FrequencyGrid", "frequencies must be > 0");
  for (std::size_t i = 1; i < freqs_.size(); ++i) {
    if (!(freqs_[i] > freqs_[i - 1]))
      throw DomainError("FrequencyGrid", "frequencies must be strictly increasing");
  }
}

FrequencyGrid make_log_grid(double f_min, double f_max, std::size_t n) {
  if (!(f_min > 0.0 && f_max > f_min) || n < 2)
    throw DomainError("make_log_grid", "require 0 < f_min < f_max and n >= 2");
  std::vector<double> f(n);
  const double lo = std::log10(f_min);
  const double step = (std::log10(f_max) - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(10.0, lo + step * static_cast<double>(i));
  f.front() = f_min;
  f.back() = f_max;
  return FrequencyGrid(std::move(f), Spacing::log);
}

FrequencyGrid make_linear_grid(double f_min, double f_max, std::size_t n) {
  if (!(f_min > 0.0 && f_max > f_min) || n < 2)
    throw DomainError("make_linear_grid", "require 0 < f_min < f_max and n >= 2");
  std::vector<double> f(n);
  const double step = (f_max - f_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) f[i] = f_min + step * static_cast<double>(i);
  f.back() = f_max;
  return FrequencyGrid(std::move(f), Spacing::linear);
}

std::string_view to_string(SpectrumUnits u) {
  switch (u) {
    case SpectrumUnits::force: return "N^2/Hz";
    case SpectrumUnits::displacement: return "m^2/Hz";
    case SpectrumUnits::current: return "A^2/Hz";
    case SpectrumUnits::shot_normalized: return "shot-noise-normalized";
  }
  return "";
}

NoiseSpectrum::NoiseSpectrum(FrequencyGrid grid, SpectrumUnits units,
                             std::vector<Channel> channels)
    : grid_(std::move(grid)), units_(units), channels_(std::move(channels)),
      total_(grid_.size(), 0.0) {
  for (const auto& ch : channels_) {
    if (ch.name == "total") throw DomainError("NoiseSpectrum", "'total' is a reserved name");
    if (ch.values.size() != grid_.size())
      throw DomainError("NoiseSpectrum", "channel '" + ch.name + "' does not match the grid");
    for (std::size_t i = 0; i < ch.values.size(); ++i) {
      if (!(ch.values[i] >= 0.0))
        throw DomainError("NoiseSpectrum", "channel '" + ch.name + "' has a negative or NaN PSD");
      total_[i] += ch.values[i];
    }
  }
}

std::span<const double> NoiseSpectrum::channel(std::string_view name) const {
  if (name == "total") return total_;
  auto it = std::find_if(channels_.begin(), channels_.end(),
                         [&](const Channel& c) { return c.name == name; });
  if (it == channels_.end())
    throw DomainError("NoiseSpectrum", "no channel named '" + std::string(name) + "'");
  return it->values;
}

bool NoiseSpectrum::has_channel(std::string_view name) const noexcept {
  return name == "total" || std::any_of(channels_.begin(), channels_.end(),
                                        [&](const Channel& c) { return c.name == name; });
}

}  // namespace levinoise
