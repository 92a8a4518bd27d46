#pragma once

#include <span>
#include <utility>
#include <vector>

#include "levinoise/core.hpp"

namespace levinoise {

struct CslParams {
  double lambda = 1e-16;  // 1/s
  double r_c = 1e-7;      // m
};

void validate(const CslParams& c);

/// Form factor of a homogeneous sphere, u = R^2/r_C^2.
/// Goes as u^2/6 for small u and saturates at 1.
double csl_bracket(double u);

/// White force PSD (N^2/Hz) of the collapse noise on the sphere.
double csl_force_psd(const ParticleSpec& p, const CslParams& c);

/// Collapse rate giving unit SNR against a white force background.
double lambda_min(const ParticleSpec& p, double r_c, double s_ff_background);

std::vector<std::pair<double, double>> lambda_curve(const ParticleSpec& p,
                                                    std::span<const double> r_c_grid,
                                                    double s_ff_background);

}  // namespace levinoise
