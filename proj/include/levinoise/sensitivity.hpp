#pragma once

#include <variant>
#include <vector>

#include "levinoise/cavity.hpp"
#include "levinoise/electrical.hpp"
#include "levinoise/report.hpp"
#include "levinoise/tweezer.hpp"

namespace levinoise {

struct CavityReadout {
  CavitySpec cavity;
  std::vector<double> powers;  // W
  CavityFloor floor = CavityFloor::shot;
};

struct TweezerReadout {
  TweezerSpec tweezer;
  std::vector<double> powers;  // W
  TweezerFloor floor = TweezerFloor::nep;
};

struct ElectricalReadout {
  TransformerSpec transformer;
  AmplifierSpec amplifier = amplifier_preset(AmplifierKind::squid);
  std::vector<double> pressures;  // Pa
};

using ReadoutConfig = std::variant<CavityReadout, TweezerReadout, ElectricalReadout>;

/// Rows of one scheme, in sweep order.
std::vector<SensitivityReport> run_readout(const ReadoutConfig& cfg, const ParticleSpec& p,
                                           const EnvironmentSpec& env, const TrapSpec& trap,
                                           double r_c = 1e-7, unsigned threads = 1);

/// All rows of all schemes, sorted by lambda_min (stable for ties).
std::vector<SensitivityReport> compare_schemes(const std::vector<ReadoutConfig>& configs,
                                               const ParticleSpec& p, const EnvironmentSpec& env,
                                               const TrapSpec& trap, double r_c = 1e-7,
                                               unsigned threads = 1);

/// Log-log interpolation of the bandwidth at a target lambda_min over rows of
/// one scheme. Returns NaN when the target lies outside the rows' range.
double bandwidth_at_lambda(const std::vector<SensitivityReport>& rows, double lambda);

}  // namespace levinoise
