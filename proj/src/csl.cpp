#include "levinoise/csl.hpp"

#include <cmath>

namespace levinoise {

namespace {
constexpr double kSeriesSwitch = 0.01;
}

void validate(const CslParams& c) {
  if (!(c.lambda >= 0.0)) throw DomainError("CslParams", "lambda must be >= 0");
  if (!(c.r_c > 0.0)) throw DomainError("CslParams", "r_C must be > 0");
}

double csl_bracket(double u) {
  if (!(u > 0.0)) throw DomainError("csl_bracket", "u must be > 0");
  if (u < kSeriesSwitch) {
    // Alternating series of 1 + e^-u + (2/u)(e^-u - 1); the direct form loses
    // all digits to cancellation here.
    return u * u * (1.0 / 6.0 + u * (-1.0 / 12.0 + u * (1.0 / 40.0 - u / 180.0)));
  }
  const double em = std::exp(-u);
  return 1.0 + em + 2.0 * std::expm1(-u) / u;
}

double csl_force_psd(const ParticleSpec& p, const CslParams& c) {
  validate(p);
  validate(c);
  using namespace constants;
  const double u = p.radius * p.radius / (c.r_c * c.r_c);
  const double pref = 32.0 * pi * pi * hbar * hbar * c.lambda * c.r_c * c.r_c * p.density *
                      p.density * p.radius * p.radius / (3.0 * m0 * m0);
  return pref * csl_bracket(u);
}

double lambda_min(const ParticleSpec& p, double r_c, double s_ff_background) {
  if (!(s_ff_background >= 0.0))
    throw DomainError("lambda_min", "background force PSD must be >= 0");
  constexpr double lambda_ref = 1.0;
  const double s_ref = csl_force_psd(p, {lambda_ref, r_c});
  if (!(s_ref > 0.0)) throw DomainError("lambda_min", "particle does not couple to CSL noise");
  return lambda_ref * s_ff_background / s_ref;
}

std::vector<std::pair<double, double>> lambda_curve(const ParticleSpec& p,
                                                    std::span<const double> r_c_grid,
                                                    double s_ff_background) {
  std::vector<std::pair<double, double>> out;
  out.reserve(r_c_grid.size());
  for (double rc : r_c_grid) out.emplace_back(rc, lambda_min(p, rc, s_ff_background));
  return out;
}

}  // namespace levinoise
