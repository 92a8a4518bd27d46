#pragma once

#include <vector>

#include "levinoise/core.hpp"
#include "levinoise/measurement.hpp"
#include "levinoise/paul_trap.hpp"
#include "levinoise/report.hpp"
#include "levinoise/thermal.hpp"

namespace levinoise {

enum class TweezerGeometry { single_beam, counter_propagating };

std::string_view to_string(TweezerGeometry g);
TweezerGeometry tweezer_geometry_from_string(std::string_view name);

/// Free-space detection of the light scattered by the particle, mixed with a
/// local oscillator.
struct TweezerSpec {
  double wavelength = 1550e-9;  // m
  double numerical_aperture = 0.6;
  double power = 500e-9;  // W, total on the particle
  TweezerGeometry geometry = TweezerGeometry::counter_propagating;
  double efficiency = 0.02;  // collection and detection
  double nep = 1e-14;        // W/sqrt(Hz)
  double lo_power = 1e-9;    // W
  double lens_waist = 2e-6;  // m, beam waist of the counter-propagating lens pair
  double harmonic_region = 10e-12;  // m, tolerated push of the trap origin (single beam)

  double wavenumber() const noexcept { return 2.0 * constants::pi / wavelength; }
  /// Diffraction-limited waist lambda / (pi NA).
  double focal_waist() const noexcept {
    return wavelength / (constants::pi * numerical_aperture);
  }
};

void validate(const TweezerSpec& tw);

/// Rayleigh scattering cross section (8 pi / 3) k^4 |alpha / 4 pi eps0|^2.
double scattering_cross_section(const ParticleSpec& p, double wavelength);

/// Largest power compatible with the Paul trap. Single beam: the scattering
/// force must not push the trap origin by more than `harmonic_region`, so the
/// limit scales as 1/R^3. Counter-propagating: the optical spring must stay
/// below the secular frequency.
double max_power(const TweezerSpec& tw, const TrapSpec& trap, const ParticleSpec& p);

/// dP_det/dx = 2 eta sqrt(P_s P_LO) k.
double detection_slope(const TweezerSpec& tw, const ParticleSpec& p);
double nep_displacement_floor(const TweezerSpec& tw, const ParticleSpec& p);
double shot_displacement_floor(const TweezerSpec& tw, const ParticleSpec& p);

struct TweezerOperatingPoint {
  double scattered_power = 0.0;
  double absorbed_power = 0.0;
  ThermalForce thermal;
  OscillatorSpec oscillator;
  double s_recoil = 0.0;
  double s_backaction = 0.0;
  double s_bias = 0.0;
  double s_xx_shot = 0.0;
  double s_xx_nep = 0.0;

  double s_ff_total() const noexcept {
    return thermal.total() + s_recoil + s_backaction + s_bias;
  }
};

TweezerOperatingPoint tweezer_operating_point(const TweezerSpec& tw, const ParticleSpec& p,
                                              const EnvironmentSpec& env, const TrapSpec& trap);

/// Shot-normalized PSD. Channels: quantum, thermal, trap-bias, nep, shot.
NoiseSpectrum homodyne_psd(const TweezerSpec& tw, const ParticleSpec& p, const EnvironmentSpec& env,
                           const TrapSpec& trap, const FrequencyGrid& grid);

enum class TweezerFloor { shot, nep };

std::vector<SensitivityReport> sensitivity_sweep(const TweezerSpec& tw, const ParticleSpec& p,
                                                 const EnvironmentSpec& env, const TrapSpec& trap,
                                                 const std::vector<double>& powers, double r_c,
                                                 TweezerFloor floor, unsigned threads = 1);

}  // namespace levinoise
