#include "levinoise/measurement.hpp"

#include <cmath>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "levinoise/parallel.hpp"

namespace levinoise {

using namespace constants;

void validate(const OscillatorSpec& o) {
  if (!(o.mass > 0.0)) throw DomainError("OscillatorSpec", "mass must be > 0");
  if (!(o.omega0 > 0.0)) throw DomainError("OscillatorSpec", "omega0 must be > 0");
  if (!(o.damping > 0.0) || !std::isfinite(o.omega0 / o.damping))
    throw DomainError("OscillatorSpec", "damping must be > 0 with finite Q");
}

std::complex<double> susceptibility(const OscillatorSpec& osc, double omega) {
  validate(osc);
  if (!(omega >= 0.0)) throw DomainError("susceptibility", "omega must be >= 0");
  const std::complex<double> den(osc.omega0 * osc.omega0 - omega * omega, -omega * osc.damping);
  return 1.0 / (osc.mass * den);
}

Bandwidth measurement_bandwidth(const OscillatorSpec& osc, const MeasurementBudget& b) {
  validate(osc);
  if (!(b.s_xx > 0.0) || !(b.s_ff > 0.0))
    throw DomainError("measurement_bandwidth", "S_xx and S_ff must be > 0");
  const double m = osc.mass, w0 = osc.omega0, g = osc.damping;
  Bandwidth out;
  out.delta_f = std::sqrt(b.s_ff / b.s_xx) / (2.0 * pi * m * w0);

  // |chi|^2 S_ff = S_xx as a quadratic in y = w^2:
  // y^2 - (2 w0^2 - g^2) y + w0^4 - K = 0, K = S_ff / (m^2 S_xx).
  const double K = b.s_ff / (m * m * b.s_xx);
  const double disc = g * g * g * g - 4.0 * w0 * w0 * g * g + 4.0 * K;
  if (disc < 0.0) {
    out.delta_f = 0.0;
    out.resolved = false;
    return out;
  }
  const double sq = std::sqrt(disc);
  const double mid = w0 * w0 - 0.5 * g * g;
  const double y_plus = mid + 0.5 * sq;
  const double y_minus = mid - 0.5 * sq;
  const double w2 = std::sqrt(y_plus);
  if (y_minus <= 0.0) {
    out.f1 = 0.0;
    out.f2 = w2 / (2.0 * pi);
    return out;
  }
  const double w1 = std::sqrt(y_minus);
  // w2 - w1 without cancellation.
  const double dw = sq / (w2 + w1);
  out.f2 = w2 / (2.0 * pi);
  out.f1 = out.f2 - dw / (2.0 * pi);
  return out;
}

double heating_rate(const OscillatorSpec& osc, double s_ff) {
  validate(osc);
  if (!(s_ff >= 0.0)) throw DomainError("heating_rate", "S_ff must be >= 0");
  return s_ff / (4.0 * osc.mass * hbar * osc.omega0);
}

double continuous_estimate_uncertainty(double delta_f, double t_m) {
  if (!(delta_f > 0.0) || !(t_m > 0.0))
    throw DomainError("continuous_estimate_uncertainty", "bandwidth and time must be > 0");
  return 1.0 / std::sqrt(t_m * delta_f);
}

double stroboscopic_estimate_uncertainty(double gamma, double t, double n1, double sigma_n1) {
  if (!(gamma > 0.0) || !(t > 0.0))
    throw DomainError("stroboscopic_estimate_uncertainty", "gamma and t must be > 0");
  if (!(n1 >= 0.0)) throw DomainError("stroboscopic_estimate_uncertainty", "n1 must be >= 0");
  const double gt = gamma * t;
  return std::sqrt(n1 + gt + sigma_n1 * sigma_n1) / gt;
}

double effective_rate_with_N(double gamma, double n) {
  if (!(n >= 1.0)) throw DomainError("effective_rate_with_N", "N must be >= 1");
  return gamma / n;
}

ReheatingStatistics simulate_reheating(const OscillatorSpec& osc, double s_ff, double t,
                                       std::size_t trajectories, std::uint64_t seed,
                                       unsigned steps, unsigned threads) {
  validate(osc);
  if (!(s_ff > 0.0) || !(t > 0.0))
    throw DomainError("simulate_reheating", "S_ff and t must be > 0");
  if (trajectories < 2 || steps == 0)
    throw DomainError("simulate_reheating", "need >= 2 trajectories and >= 1 step");

  // State y = (w0 x, v) keeps the drift matrix well scaled. Force noise of
  // one-sided PSD S_ff is a velocity diffusion D = S_ff / (2 m^2).
  const double w0 = osc.omega0;
  const double h = t / steps;
  Eigen::Matrix2d A;
  A << 0.0, w0, -w0, -osc.damping;
  Eigen::Matrix2d Q = Eigen::Matrix2d::Zero();
  Q(1, 1) = s_ff / (2.0 * osc.mass * osc.mass);

  // Van Loan: expm([[-A, Q], [0, A^T]] h) yields Phi and the step covariance.
  Eigen::Matrix4d vl = Eigen::Matrix4d::Zero();
  vl.block<2, 2>(0, 0) = -A;
  vl.block<2, 2>(0, 2) = Q;
  vl.block<2, 2>(2, 2) = A.transpose();
  const Eigen::Matrix4d ex = (vl * h).exp();
  const Eigen::Matrix2d phi = ex.block<2, 2>(2, 2).transpose();
  Eigen::Matrix2d cov = phi * ex.block<2, 2>(0, 2);
  cov = 0.5 * (cov + cov.transpose());
  Eigen::LLT<Eigen::Matrix2d> llt(cov);
  if (llt.info() != Eigen::Success)
    throw NumericError("simulate_reheating", "step covariance is not positive definite");
  const Eigen::Matrix2d L = llt.matrixL();

  const double quantum = hbar * w0;
  auto run = [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    Eigen::Vector2d y = Eigen::Vector2d::Zero();
    for (unsigned s = 0; s < steps; ++s) {
      const Eigen::Vector2d z(normal(rng), normal(rng));
      y = phi * y + L * z;
    }
    const double energy = 0.5 * osc.mass * y.squaredNorm();
    return energy / quantum / t;
  };
  const auto est = parallel_map<double>(trajectories, threads, run);

  ReheatingStatistics st;
  st.trajectories = trajectories;
  st.gamma_true = heating_rate(osc, s_ff);
  double sum = 0.0;
  for (double g : est) sum += g;
  st.gamma_mean = sum / static_cast<double>(trajectories);
  double ss = 0.0;
  for (double g : est) ss += (g - st.gamma_mean) * (g - st.gamma_mean);
  st.gamma_std = std::sqrt(ss / static_cast<double>(trajectories - 1));
  return st;
}

}  // namespace levinoise
