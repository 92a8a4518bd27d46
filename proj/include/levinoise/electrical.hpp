#pragma once

#include <complex>
#include <vector>

#include "levinoise/core.hpp"
#include "levinoise/measurement.hpp"
#include "levinoise/paul_trap.hpp"
#include "levinoise/report.hpp"

namespace levinoise {

enum class AmplifierKind { squid, fet, sset, custom };

std::string_view to_string(AmplifierKind k);
AmplifierKind amplifier_kind_from_string(std::string_view name);

/// Linear amplifier seen from the transformer secondary: an imprecision
/// current S_II at the output and a backaction voltage S_VV in the input loop.
/// For SQUIDs the backaction grows as w^2 (S_VV = 2 hbar w^2 L_i N).
struct AmplifierSpec {
  AmplifierKind kind = AmplifierKind::squid;
  double input_inductance = 1e-6;  // H
  double s_ii = 0.0;               // A^2/Hz
  double s_vv = 0.0;               // V^2/Hz at reference_omega
  double reference_omega = 2.0 * constants::pi * 1e3;
  bool backaction_scales_as_omega2 = true;

  double backaction_psd(double omega) const noexcept {
    return backaction_scales_as_omega2
               ? s_vv * (omega / reference_omega) * (omega / reference_omega)
               : s_vv;
  }
  /// sqrt(S_II S_VV) / (2 hbar w) at the reference frequency.
  double noise_number() const noexcept;
};

AmplifierSpec squid_amplifier(double noise_number, double input_inductance,
                              double omega = 2.0 * constants::pi * 1e3);

/// SQUID (N = 10), FET (1 fA/rtHz, 1 nV/rtHz) and an indicative SSET.
std::vector<AmplifierSpec> amplifier_presets(double omega = 2.0 * constants::pi * 1e3);
AmplifierSpec amplifier_preset(AmplifierKind kind, double omega = 2.0 * constants::pi * 1e3);

/// Superconducting transformer between the trap electrodes and the amplifier.
/// tuning_capacitance == 0 means untuned: only the electrode capacitance
/// shunts the primary.
struct TransformerSpec {
  double primary_inductance = 10.0;     // H
  double secondary_inductance = 1e-6;   // H
  double coupling = 0.8;                // k_t
  double quality_factor = 1e6;
  double tuning_capacitance = 0.0;      // F
  double electrode_capacitance = 1e-13; // F

  double mutual() const noexcept {
    return coupling * std::sqrt(primary_inductance * secondary_inductance);
  }
  double shunt_capacitance() const noexcept { return tuning_capacitance + electrode_capacitance; }
};

void validate(const TransformerSpec& tr);
void validate(const AmplifierSpec& amp);

struct EquivalentLC {
  double inductance;   // L_m = m / beta^2
  double capacitance;  // C_m = 1 / (w0^2 L_m)
};

EquivalentLC equivalent_lc(const OscillatorSpec& osc, double beta);

/// Displacement noise of an amplifier wired straight to the electrodes, m^2/Hz.
double direct_coupling_displacement_noise(const AmplifierSpec& amp, double beta, double omega0);

/// Noise number of the transformer loss, 2 k_B T / (hbar w0 Q).
double transformer_noise_number(const TransformerSpec& tr, double temperature, double omega0);

/// Primary inductance seen through the loaded secondary.
double effective_primary_inductance(const TransformerSpec& tr, const AmplifierSpec& amp);

/// Tuning capacitance placing the electrical resonance at omega (C_el included).
double tuned_capacitance(const TransformerSpec& tr, const AmplifierSpec& amp, double omega);

/// White mechanical force sources acting on the particle, N^2/Hz.
struct MechanicalForces {
  double gas = 0.0;
  double blackbody = 0.0;
  double bias = 0.0;
  double total() const noexcept { return gas + blackbody + bias; }
};

struct CircuitSolution {
  FrequencyGrid grid;
  std::vector<std::complex<double>> h_force;       // F -> I_SQ, A/N
  std::vector<std::complex<double>> h_nyquist;     // V_n -> I_SQ, A/V
  std::vector<std::complex<double>> h_backaction;  // V_ba -> I_SQ, A/V
  NoiseSpectrum output;        // A^2/Hz at the amplifier
  NoiseSpectrum force_referred;  // N^2/Hz at the particle
};

/// Kirchhoff plus mechanical equations in (x, I_L, I_C, I_SQ), solved per
/// frequency. Channels: gas, blackbody-recoil, trap-bias, electrical
/// (transformer Nyquist), backaction, imprecision.
CircuitSolution solve_circuit(const OscillatorSpec& osc, double beta, const TransformerSpec& tr,
                              const AmplifierSpec& amp, double bath_temperature,
                              const MechanicalForces& forces, const FrequencyGrid& grid,
                              unsigned threads = 1);

/// Imprecision S_II referred to the particle displacement, m^2/Hz.
double displacement_imprecision(const OscillatorSpec& osc, double beta, const TransformerSpec& tr,
                                const AmplifierSpec& amp, double omega);

struct ModeReport {
  double lower_peak = 0.0;  // Hz
  double upper_peak = 0.0;  // Hz
  double splitting = 0.0;   // Hz
  double antiresonance = 0.0;           // Hz
  double antiresonance_bandwidth = 0.0;  // Hz where electrical < mechanical force noise
};

struct TunedSolution {
  TransformerSpec transformer;  // with the tuning capacitance filled in
  CircuitSolution solution;
  ModeReport modes;
};

/// Tunes the LC to w0, solves on `grid`, and locates the hybridized modes and
/// the antiresonance on an internal f0 +- 2 Hz grid of `detection_points`.
TunedSolution tuned_lc_solution(const OscillatorSpec& osc, double beta, TransformerSpec tr,
                                const AmplifierSpec& amp, double bath_temperature,
                                const MechanicalForces& forces, const FrequencyGrid& grid,
                                std::size_t detection_points = 8001, unsigned threads = 1);

/// Pressure sweep with no optical absorption (T = T_g).
std::vector<SensitivityReport> sensitivity_sweep(const ParticleSpec& p, const EnvironmentSpec& env,
                                                 const TrapSpec& trap, const TransformerSpec& tr,
                                                 const AmplifierSpec& amp,
                                                 const std::vector<double>& pressures, double r_c,
                                                 unsigned threads = 1);

}  // namespace levinoise
