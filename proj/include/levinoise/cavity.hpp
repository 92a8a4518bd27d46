#pragma once

#include <complex>
#include <vector>

#include "levinoise/core.hpp"
#include "levinoise/measurement.hpp"
#include "levinoise/paul_trap.hpp"
#include "levinoise/report.hpp"
#include "levinoise/thermal.hpp"

namespace levinoise {

/// Asymmetric low-finesse cavity read out in homodyne on the phase quadrature.
struct CavitySpec {
  double length = 15e-3;         // m
  double finesse = 1000.0;
  double waist = 62e-6;          // m
  double wavelength = 1064e-9;   // m
  double input_coupling = 0.1;   // kappa_in / kappa
  double detuning = 0.0;         // rad/s
  double input_power = 10e-6;    // W
  double phase = constants::pi / 4.0;  // particle position in the standing wave
  double efficiency = 1.0;       // homodyne efficiency
  double frequency_noise = 4e8;  // S_nu(f) = frequency_noise / f^2, Hz^2/Hz

  double wavenumber() const noexcept { return 2.0 * constants::pi / wavelength; }
  double omega_laser() const noexcept { return constants::c * wavenumber(); }
  /// Half linewidth pi c / (2 L F).
  double kappa() const noexcept { return constants::pi * constants::c / (2.0 * length * finesse); }
};

void validate(const CavitySpec& cav);

struct CavityDerived {
  double kappa = 0.0, kappa_in = 0.0, kappa_out = 0.0;  // rad/s
  double mode_volume = 0.0;                             // m^3
  std::complex<double> polarizability;                  // C m^2 / V
  double g_o = 0.0;        // dispersive shift amplitude, rad/s
  double x_zpf = 0.0;      // m
  double g = 0.0;          // single-photon coupling, rad/s
  double coupling = 0.0;   // |d omega_c / dx| at the particle, rad/s/m
  double photons = 0.0;    // intracavity photon number
  double omega_t = 0.0;    // optical trap frequency at the antinode, rad/s
  double intensity = 0.0;  // W/m^2 at the particle
  double absorbed_power = 0.0;
  double scattered_power = 0.0;
  double recoil_heating = 0.0;  // phonons/s from photon recoil
};

CavityDerived cavity_derived(const CavitySpec& cav, const ParticleSpec& p, const TrapSpec& trap);

struct DispersiveShift {
  double shift;  // rad/s
  double slope;  // rad/s/m
};

/// g_o cos^2(phi) and its derivative along the cavity axis.
DispersiveShift dispersive_shift(double g_o, double phi, double k);

struct OpticalTrap {
  double omega_t;
  bool exceeds_secular;
};

OpticalTrap optical_trap_frequency(const CavitySpec& cav, const ParticleSpec& p,
                                   const TrapSpec& trap);

/// Everything the spectra and sweeps need at one operating point.
struct CavityOperatingPoint {
  CavityDerived derived;
  ThermalForce thermal;
  OscillatorSpec oscillator;
  double s_recoil = 0.0;      // N^2/Hz
  double s_backaction = 0.0;  // N^2/Hz
  double s_bias = 0.0;        // N^2/Hz
  double s_xx_shot = 0.0;     // m^2/Hz

  double s_ff_total() const noexcept {
    return thermal.total() + s_recoil + s_backaction + s_bias;
  }
};

CavityOperatingPoint cavity_operating_point(const CavitySpec& cav, const ParticleSpec& p,
                                            const EnvironmentSpec& env, const TrapSpec& trap);

/// Apparent displacement PSD of laser frequency noise at f (Hz).
double frequency_noise_floor(const CavitySpec& cav, const CavityDerived& d, double f);

/// Effective susceptibility including the optical spring; equals the bare one at zero detuning.
std::complex<double> effective_susceptibility(const CavityOperatingPoint& op, const CavitySpec& cav,
                                              double omega);

struct OpticalSpring {
  double frequency_shift;  // rad/s
  double damping_shift;    // 1/s
};

OpticalSpring optical_spring(const CavityOperatingPoint& op, const CavitySpec& cav);

/// Shot-normalized homodyne PSD. Channels: quantum (recoil + backaction),
/// thermal, trap-bias, frequency-noise, shot.
NoiseSpectrum homodyne_psd(const CavitySpec& cav, const ParticleSpec& p, const EnvironmentSpec& env,
                           const TrapSpec& trap, const FrequencyGrid& grid);

enum class CavityFloor { shot, frequency_noise };

std::vector<SensitivityReport> sensitivity_sweep(const CavitySpec& cav, const ParticleSpec& p,
                                                 const EnvironmentSpec& env, const TrapSpec& trap,
                                                 const std::vector<double>& powers, double r_c,
                                                 CavityFloor floor, unsigned threads = 1);

struct LinearityResult {
  double dx_rms;        // m
  bool pass;            // dx_rms <= lambda / 16
  double required_factor;  // damping increase needed to pass (1 if already passing)
};

LinearityResult linearity_check(const OscillatorSpec& osc, double t_eff, double wavelength);

/// Largest detuning for which the optical spring stays below half the mechanical linewidth.
double detuning_limit(const CavitySpec& cav, const ParticleSpec& p, const TrapSpec& trap,
                      double gamma_tot);

}  // namespace levinoise
