#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "levinoise/constants.hpp"
#include "levinoise/error.hpp"

namespace levinoise {

enum class Material { silica, osmium, gold, platinum, custom };

std::string_view to_string(Material m);
Material material_from_string(std::string_view name);

/// Homogeneous sphere levitated in the trap.
///
/// `eps_opt` is the relative permittivity at the readout laser wavelength and
/// sets the Rayleigh polarizability, scattering and absorption cross sections.
/// `eps_abs` is Im[(eps_bb - 1)/(eps_bb + 2)] in the thermal infrared and sets
/// blackbody emission; use absorption_coefficient() to derive it from a
/// complex eps_bb.
struct ParticleSpec {
  double radius = 200e-9;   // m
  double density = 2200.0;  // kg/m^3
  Material material = Material::silica;
  double charge = 0.0;  // C
  std::complex<double> eps_opt{2.1, 9.0e-8};
  double eps_abs = 0.1;

  /// Material preset with the documented density and permittivities.
  static ParticleSpec preset(Material m, double radius, double charge = 0.0);
};

void validate(const ParticleSpec& p);

double particle_volume(const ParticleSpec& p);

/// (4/3) pi R^3 rho.
double particle_mass(const ParticleSpec& p);

/// (eps - 1)/(eps + 2).
std::complex<double> clausius_mossotti(std::complex<double> eps);

/// Im[(eps - 1)/(eps + 2)].
double absorption_coefficient(std::complex<double> eps);

enum class Gas { helium, hydrogen, nitrogen, argon };

std::string_view to_string(Gas g);
Gas gas_from_string(std::string_view name);

/// Residual gas bath plus the phenomenological surface-collision parameters.
struct EnvironmentSpec {
  double pressure = 1e-11;                 // Pa
  double gas_temperature = 0.3;            // K
  double gas_molecular_mass = 4.002602 * constants::amu;  // kg
  double thermal_accommodation = 0.4;      // alpha, enters the heat flow
  double momentum_accommodation = 0.4;     // a, sets the re-emission temperature
  double heat_capacity_ratio = 5.0 / 3.0;  // gamma_s

  static EnvironmentSpec preset(Gas g, double pressure, double temperature);
};

void validate(const EnvironmentSpec& env);

/// Mean thermal speed sqrt(8 k_B T_g / (pi m)).
double gas_thermal_speed(const EnvironmentSpec& env);

enum class Spacing { linear, log };

/// Strictly increasing list of positive frequencies (Hz).
class FrequencyGrid {
public:
  FrequencyGrid(std::vector<double> freqs, Spacing spacing);

  std::span<const double> values() const noexcept { return freqs_; }
  std::size_t size() const noexcept { return freqs_.size(); }
  double operator[](std::size_t i) const { return freqs_[i]; }
  Spacing spacing() const noexcept { return spacing_; }

private:
  std::vector<double> freqs_;
  Spacing spacing_;
};

FrequencyGrid make_log_grid(double f_min, double f_max, std::size_t n);
FrequencyGrid make_linear_grid(double f_min, double f_max, std::size_t n);

enum class SpectrumUnits { force, displacement, current, shot_normalized };

std::string_view to_string(SpectrumUnits u);

/// One-sided PSD on a frequency grid, decomposed into uncorrelated source
/// channels. The total is always the pointwise sum of the channels.
class NoiseSpectrum {
public:
  struct Channel {
    std::string name;
    std::vector<double> values;
  };

  NoiseSpectrum(FrequencyGrid grid, SpectrumUnits units, std::vector<Channel> channels);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  SpectrumUnits units() const noexcept { return units_; }
  static constexpr bool one_sided = true;

  const std::vector<Channel>& channels() const noexcept { return channels_; }
  std::span<const double> channel(std::string_view name) const;
  bool has_channel(std::string_view name) const noexcept;
  std::span<const double> total() const noexcept { return total_; }

private:
  FrequencyGrid grid_;
  SpectrumUnits units_;
  std::vector<Channel> channels_;
  std::vector<double> total_;
};

}  // namespace levinoise
