#include "levinoise/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace levinoise {

std::vector<SensitivityReport> run_readout(const ReadoutConfig& cfg, const ParticleSpec& p,
                                           const EnvironmentSpec& env, const TrapSpec& trap,
                                           double r_c, unsigned threads) {
  return std::visit(
      [&](const auto& c) -> std::vector<SensitivityReport> {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CavityReadout>)
          return sensitivity_sweep(c.cavity, p, env, trap, c.powers, r_c, c.floor, threads);
        else if constexpr (std::is_same_v<T, TweezerReadout>)
          return sensitivity_sweep(c.tweezer, p, env, trap, c.powers, r_c, c.floor, threads);
        else
          return sensitivity_sweep(p, env, trap, c.transformer, c.amplifier, c.pressures, r_c,
                                   threads);
      },
      cfg);
}

std::vector<SensitivityReport> compare_schemes(const std::vector<ReadoutConfig>& configs,
                                               const ParticleSpec& p, const EnvironmentSpec& env,
                                               const TrapSpec& trap, double r_c,
                                               unsigned threads) {
  if (configs.empty()) throw DomainError("compare_schemes", "need at least one readout config");
  std::vector<SensitivityReport> rows;
  for (const auto& cfg : configs) {
    auto part = run_readout(cfg, p, env, trap, r_c, threads);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()),
                std::make_move_iterator(part.end()));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.lambda_min < b.lambda_min;
  });
  return rows;
}

double bandwidth_at_lambda(const std::vector<SensitivityReport>& rows, double lambda) {
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const auto& a = rows[i];
    const auto& b = rows[i + 1];
    const double lo = std::min(a.lambda_min, b.lambda_min);
    const double hi = std::max(a.lambda_min, b.lambda_min);
    if (lambda < lo || lambda > hi || a.bandwidth <= 0.0 || b.bandwidth <= 0.0) continue;
    if (hi == lo) return a.bandwidth;
    const double t = std::log(lambda / a.lambda_min) / std::log(b.lambda_min / a.lambda_min);
    return std::exp(std::log(a.bandwidth) + t * std::log(b.bandwidth / a.bandwidth));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace levinoise
