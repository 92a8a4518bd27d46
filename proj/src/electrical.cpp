#include "levinoise/electrical.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "levinoise/csl.hpp"
#include "levinoise/parallel.hpp"
#include "levinoise/thermal.hpp"

namespace levinoise {

using namespace constants;
using cd = std::complex<double>;

std::string_view to_string(AmplifierKind k) {
  switch (k) {
    case AmplifierKind::squid: return "squid";
    case AmplifierKind::fet: return "fet";
    case AmplifierKind::sset: return "sset";
    case AmplifierKind::custom: return "custom";
  }
  return "custom";
}

AmplifierKind amplifier_kind_from_string(std::string_view name) {
  for (auto k : {AmplifierKind::squid, AmplifierKind::fet, AmplifierKind::sset,
                 AmplifierKind::custom}) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("amplifier_kind_from_string", "unknown amplifier '" + std::string(name) + "'");
}

double AmplifierSpec::noise_number() const noexcept {
  return std::sqrt(s_ii * s_vv) / (2.0 * hbar * reference_omega);
}

AmplifierSpec squid_amplifier(double noise_number, double input_inductance, double omega) {
  AmplifierSpec a;
  a.kind = AmplifierKind::squid;
  a.input_inductance = input_inductance;
  a.reference_omega = omega;
  a.s_ii = 2.0 * hbar * noise_number / input_inductance;
  a.s_vv = 2.0 * hbar * omega * omega * input_inductance * noise_number;
  a.backaction_scales_as_omega2 = true;
  return a;
}

AmplifierSpec amplifier_preset(AmplifierKind kind, double omega) {
  switch (kind) {
    case AmplifierKind::squid:
    case AmplifierKind::custom: {
      auto a = squid_amplifier(10.0, 1e-6, omega);
      a.kind = kind;
      return a;
    }
    case AmplifierKind::fet: {
      AmplifierSpec a;
      a.kind = kind;
      a.reference_omega = omega;
      a.s_ii = 1e-15 * 1e-15;
      a.s_vv = 1e-9 * 1e-9;
      a.backaction_scales_as_omega2 = false;
      return a;
    }
    case AmplifierKind::sset: {
      // Indicative only: 1e-6 e/rtHz of charge noise read as a current at w,
      // backaction put at the quantum limit.
      AmplifierSpec a;
      a.kind = kind;
      a.reference_omega = omega;
      const double iq = omega * 1e-6 * e;
      a.s_ii = iq * iq;
      a.s_vv = (2.0 * hbar * omega) * (2.0 * hbar * omega) / a.s_ii;
      a.backaction_scales_as_omega2 = false;
      return a;
    }
  }
  return squid_amplifier(10.0, 1e-6, omega);
}

std::vector<AmplifierSpec> amplifier_presets(double omega) {
  return {amplifier_preset(AmplifierKind::squid, omega), amplifier_preset(AmplifierKind::fet, omega),
          amplifier_preset(AmplifierKind::sset, omega)};
}

void validate(const TransformerSpec& tr) {
  if (!(tr.primary_inductance > 0.0 && tr.secondary_inductance > 0.0))
    throw DomainError("TransformerSpec", "inductances must be > 0");
  if (!(tr.coupling > 0.0 && tr.coupling < 1.0))
    throw DomainError("TransformerSpec", "coupling must lie in (0, 1)");
  if (!(tr.quality_factor > 0.0)) throw DomainError("TransformerSpec", "Q must be > 0");
  if (!(tr.tuning_capacitance >= 0.0) || !(tr.electrode_capacitance > 0.0))
    throw DomainError("TransformerSpec", "capacitances must be >= 0 (electrode > 0)");
}

void validate(const AmplifierSpec& amp) {
  if (!(amp.input_inductance > 0.0)) throw DomainError("AmplifierSpec", "L_i must be > 0");
  if (!(amp.s_ii >= 0.0 && amp.s_vv >= 0.0))
    throw DomainError("AmplifierSpec", "noise PSDs must be >= 0");
  if (!(amp.reference_omega > 0.0)) throw DomainError("AmplifierSpec", "reference w must be > 0");
}

EquivalentLC equivalent_lc(const OscillatorSpec& osc, double beta) {
  validate(osc);
  if (!(beta > 0.0)) throw DomainError("equivalent_lc", "beta must be > 0");
  const double L = osc.mass / (beta * beta);
  return {L, 1.0 / (osc.omega0 * osc.omega0 * L)};
}

double direct_coupling_displacement_noise(const AmplifierSpec& amp, double beta, double omega0) {
  if (!(beta > 0.0) || !(omega0 > 0.0))
    throw DomainError("direct_coupling_displacement_noise", "beta and w0 must be > 0");
  return amp.s_ii / (omega0 * omega0 * beta * beta);
}

double transformer_noise_number(const TransformerSpec& tr, double temperature, double omega0) {
  return 2.0 * k_B * temperature / (hbar * omega0 * tr.quality_factor);
}

double effective_primary_inductance(const TransformerSpec& tr, const AmplifierSpec& amp) {
  const double M = tr.mutual();
  return tr.primary_inductance *
         (1.0 - M * M / (tr.primary_inductance * (tr.secondary_inductance + amp.input_inductance)));
}

double tuned_capacitance(const TransformerSpec& tr, const AmplifierSpec& amp, double omega) {
  validate(tr);
  const double c_tot = 1.0 / (omega * omega * effective_primary_inductance(tr, amp));
  const double c_tune = c_tot - tr.electrode_capacitance;
  if (!(c_tune > 0.0))
    throw DomainError("tuned_capacitance", "electrode capacitance alone exceeds the tuning value");
  return c_tune;
}

namespace {

struct Circuit {
  double m, w0, gamma, beta, Lp, Ls2, M, R, C;
};

Circuit make_circuit(const OscillatorSpec& osc, double beta, const TransformerSpec& tr,
                     const AmplifierSpec& amp) {
  validate(osc);
  validate(tr);
  validate(amp);
  if (!(beta >= 0.0)) throw DomainError("solve_circuit", "beta must be >= 0");
  return {osc.mass,
          osc.omega0,
          osc.damping,
          beta,
          tr.primary_inductance,
          tr.secondary_inductance + amp.input_inductance,
          tr.mutual(),
          osc.omega0 * tr.primary_inductance / tr.quality_factor,
          tr.shunt_capacitance()};
}

// Rows: mechanics, current balance at the electrodes, primary loop, secondary
// loop. Phasors e^{jwt}.
Eigen::Matrix4cd circuit_matrix(const Circuit& k, double w) {
  const cd jw(0.0, w);
  const cd zc = 1.0 / (jw * k.C);
  Eigen::Matrix4cd A;
  A << k.m * (k.w0 * k.w0 - w * w + jw * k.gamma), 0.0, k.beta * zc, 0.0,
      k.beta * jw, -1.0, -1.0, 0.0,
      0.0, -(jw * k.Lp + k.R), zc, -jw * k.M,
      0.0, jw * k.M, 0.0, jw * k.Ls2;
  return A;
}

struct Transfers {
  cd force, nyquist, backaction;
};

Transfers solve_point(const Circuit& k, double w) {
  const auto A = circuit_matrix(k, w);
  Eigen::Matrix<cd, 4, 3> B = Eigen::Matrix<cd, 4, 3>::Zero();
  B(0, 0) = 1.0;   // external force
  B(2, 1) = -1.0;  // series loss voltage in the primary
  B(3, 2) = 1.0;   // amplifier backaction voltage
  Eigen::PartialPivLU<Eigen::Matrix4cd> lu(A);
  const Eigen::Matrix<cd, 4, 3> X = lu.solve(B);
  if (!X.allFinite() || !(std::abs(lu.determinant()) > 0.0)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "singular circuit matrix at f = %.9g Hz", w / (2.0 * pi));
    throw NumericError("solve_circuit", buf);
  }
  return {X(3, 0), X(3, 1), X(3, 2)};
}

}  // namespace

CircuitSolution solve_circuit(const OscillatorSpec& osc, double beta, const TransformerSpec& tr,
                              const AmplifierSpec& amp, double bath_temperature,
                              const MechanicalForces& forces, const FrequencyGrid& grid,
                              unsigned threads) {
  if (!(bath_temperature > 0.0)) throw DomainError("solve_circuit", "temperature must be > 0");
  const Circuit k = make_circuit(osc, beta, tr, amp);
  const std::size_t n = grid.size();
  auto tf = parallel_map<Transfers>(n, threads, [&](std::size_t i) {
    return solve_point(k, 2.0 * pi * grid[i]);
  });

  const double s_nyq = 4.0 * k_B * bath_temperature * k.R;
  std::vector<cd> hf(n), hn(n), hb(n);
  std::vector<double> o_gas(n), o_bb(n), o_bias(n), o_el(n), o_ba(n), o_imp(n, amp.s_ii);
  std::vector<double> f_gas(n, forces.gas), f_bb(n, forces.blackbody), f_bias(n, forces.bias);
  std::vector<double> f_el(n), f_ba(n), f_imp(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 2.0 * pi * grid[i];
    hf[i] = tf[i].force;
    hn[i] = tf[i].nyquist;
    hb[i] = tf[i].backaction;
    const double g2 = std::norm(hf[i]);
    o_gas[i] = forces.gas * g2;
    o_bb[i] = forces.blackbody * g2;
    o_bias[i] = forces.bias * g2;
    o_el[i] = s_nyq * std::norm(hn[i]);
    o_ba[i] = amp.backaction_psd(w) * std::norm(hb[i]);
    const double inv = g2 > 0.0 ? 1.0 / g2 : HUGE_VAL;
    f_el[i] = o_el[i] > 0.0 ? o_el[i] * inv : 0.0;
    f_ba[i] = o_ba[i] > 0.0 ? o_ba[i] * inv : 0.0;
    f_imp[i] = o_imp[i] > 0.0 ? o_imp[i] * inv : 0.0;
  }
  NoiseSpectrum out(grid, SpectrumUnits::current,
                    {{"gas", std::move(o_gas)},
                     {"blackbody-recoil", std::move(o_bb)},
                     {"trap-bias", std::move(o_bias)},
                     {"electrical", std::move(o_el)},
                     {"backaction", std::move(o_ba)},
                     {"imprecision", std::move(o_imp)}});
  NoiseSpectrum fr(grid, SpectrumUnits::force,
                   {{"gas", std::move(f_gas)},
                    {"blackbody-recoil", std::move(f_bb)},
                    {"trap-bias", std::move(f_bias)},
                    {"electrical", std::move(f_el)},
                    {"backaction", std::move(f_ba)},
                    {"imprecision", std::move(f_imp)}});
  return {grid, std::move(hf), std::move(hn), std::move(hb), std::move(out), std::move(fr)};
}

double displacement_imprecision(const OscillatorSpec& osc, double beta, const TransformerSpec& tr,
                                const AmplifierSpec& amp, double omega) {
  const Circuit k = make_circuit(osc, beta, tr, amp);
  // Prescribe x = 1 in place of the mechanical equation.
  Eigen::Matrix4cd A = circuit_matrix(k, omega);
  A.row(0) << 1.0, 0.0, 0.0, 0.0;
  Eigen::Vector4cd b(1.0, 0.0, 0.0, 0.0);
  const Eigen::Vector4cd x = A.partialPivLu().solve(b);
  const double h2 = std::norm(x(3));
  if (!std::isfinite(h2)) throw NumericError("displacement_imprecision", "singular circuit");
  return h2 > 0.0 ? amp.s_ii / h2 : HUGE_VAL;
}

namespace {

// Force-referred electrical noise and output force transfer at one frequency.
struct PointNoise {
  double electrical;  // N^2/Hz
  double mechanical;  // N^2/Hz
  double transfer;    // |H_F|^2
};

PointNoise point_noise(const Circuit& k, const AmplifierSpec& amp, double T,
                       const MechanicalForces& forces, double f) {
  const double w = 2.0 * pi * f;
  const auto t = solve_point(k, w);
  const double g2 = std::norm(t.force);
  const double out = 4.0 * k_B * T * k.R * std::norm(t.nyquist) +
                     amp.backaction_psd(w) * std::norm(t.backaction) + amp.s_ii;
  return {out / g2, forces.total(), g2};
}

template <class Fn>
double refine_extremum(Fn&& fn, double lo, double hi) {
  // fn is minimized; Brent's parabolic/golden-section search.
  auto r = boost::math::tools::brent_find_minima(fn, lo, hi, 52);
  return r.first;
}

}  // namespace

TunedSolution tuned_lc_solution(const OscillatorSpec& osc, double beta, TransformerSpec tr,
                                const AmplifierSpec& amp, double bath_temperature,
                                const MechanicalForces& forces, const FrequencyGrid& grid,
                                std::size_t detection_points, unsigned threads) {
  validate(osc);
  if (detection_points < 2001)
    throw DomainError("tuned_lc_solution", "detection grid needs at least 2001 points");
  tr.tuning_capacitance = tuned_capacitance(tr, amp, osc.omega0);
  TunedSolution res{tr, solve_circuit(osc, beta, tr, amp, bath_temperature, forces, grid, threads),
                    {}};

  const Circuit k = make_circuit(osc, beta, tr, amp);
  const double f0 = osc.omega0 / (2.0 * pi);
  const auto det = make_linear_grid(f0 - 2.0, f0 + 2.0, detection_points);
  auto pts = parallel_map<PointNoise>(det.size(), threads, [&](std::size_t i) {
    return point_noise(k, amp, bath_temperature, forces, det[i]);
  });

  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    if (pts[i].transfer > pts[i - 1].transfer && pts[i].transfer >= pts[i + 1].transfer)
      peaks.push_back(i);
  }
  if (peaks.size() < 2)
    throw NumericError("tuned_lc_solution",
                       "hybridized peaks not resolved; use a finer detection grid");
  // Keep the two strongest peaks, in frequency order.
  std::sort(peaks.begin(), peaks.end(),
            [&](std::size_t a, std::size_t b) { return pts[a].transfer > pts[b].transfer; });
  std::size_t ia = std::min(peaks[0], peaks[1]), ib = std::max(peaks[0], peaks[1]);

  auto neg_transfer = [&](double f) { return -point_noise(k, amp, bath_temperature, forces, f).transfer; };
  res.modes.lower_peak = refine_extremum(neg_transfer, det[ia - 1], det[ia + 1]);
  res.modes.upper_peak = refine_extremum(neg_transfer, det[ib - 1], det[ib + 1]);
  res.modes.splitting = res.modes.upper_peak - res.modes.lower_peak;

  std::size_t imin = ia + 1;
  for (std::size_t i = ia + 1; i < ib; ++i)
    if (pts[i].electrical < pts[imin].electrical) imin = i;
  auto el = [&](double f) { return point_noise(k, amp, bath_temperature, forces, f).electrical; };
  res.modes.antiresonance = refine_extremum(el, det[imin - 1], det[imin + 1]);

  auto excess = [&](double f) {
    const auto p = point_noise(k, amp, bath_temperature, forces, f);
    return std::log(p.electrical / p.mechanical);
  };
  const double fa = res.modes.antiresonance;
  if (excess(fa) >= 0.0) return res;  // electrical noise never drops below the mechanical floor

  auto edge = [&](double dir) {
    double step = 1e-7 * f0;
    double inside = fa, outside = fa + dir * step;
    while (excess(outside) < 0.0) {
      inside = outside;
      step *= 2.0;
      outside = fa + dir * step;
      if (step > 4.0) throw NumericError("tuned_lc_solution", "antiresonance edge not bracketed");
    }
    boost::math::tools::eps_tolerance<double> tol(48);
    std::uintmax_t it = 200;
    auto [a, b] = boost::math::tools::toms748_solve(excess, std::min(inside, outside),
                                                    std::max(inside, outside), tol, it);
    return 0.5 * (a + b);
  };
  res.modes.antiresonance_bandwidth = edge(+1.0) - edge(-1.0);
  return res;
}

std::vector<SensitivityReport> sensitivity_sweep(const ParticleSpec& p, const EnvironmentSpec& env,
                                                 const TrapSpec& trap, const TransformerSpec& tr,
                                                 const AmplifierSpec& amp,
                                                 const std::vector<double>& pressures, double r_c,
                                                 unsigned threads) {
  if (pressures.empty()) throw DomainError("electrical sensitivity_sweep", "empty pressure grid");
  const double beta = transduction_factor(trap, p.charge);
  if (!(beta > 0.0)) throw DomainError("electrical sensitivity_sweep", "particle is uncharged");
  const double f0 = trap.secular_frequency;
  const FrequencyGrid at_f0({f0}, Spacing::linear);
  auto point = [&](std::size_t i) {
    EnvironmentSpec e = env;
    e.pressure = pressures[i];
    const auto th = thermal_force(p, e, 0.0);
    const OscillatorSpec osc{particle_mass(p), trap.omega0(),
                             trap.damping > 0.0 ? trap.damping : th.coupling.total_damping()};
    const MechanicalForces forces{th.gas, th.blackbody, bias_noise_force_psd(trap, p.charge)};
    const auto sol = solve_circuit(osc, beta, tr, amp, e.gas_temperature, forces, at_f0);
    const auto& fr = sol.force_referred;
    SensitivityReport r;
    r.scheme = "electrical";
    r.floor = std::string(to_string(amp.kind));
    r.parameter = "pressure_Pa";
    r.value = pressures[i];
    r.r_c = r_c;
    r.s_ff = forces.total() + fr.channel("electrical")[0] + fr.channel("backaction")[0];
    r.lambda_min = lambda_min(p, r_c, r.s_ff);
    r.s_xx = displacement_imprecision(osc, beta, tr, amp, trap.omega0());
    r.bandwidth = measurement_bandwidth(osc, {r.s_xx, r.s_ff}).delta_f;
    r.temperature = th.state.temperature;
    const std::pair<const char*, double> channels[] = {
        {"gas", forces.gas},
        {"blackbody-recoil", forces.blackbody},
        {"trap-bias", forces.bias},
        {"electrical", fr.channel("electrical")[0]},
        {"backaction", fr.channel("backaction")[0]}};
    r.dominant = std::max_element(std::begin(channels), std::end(channels),
                                  [](auto& a, auto& b) { return a.second < b.second; })
                     ->first;
    if (tr.tuning_capacitance > 0.0) r.flags.push_back("tuned");
    return r;
  };
  return parallel_map<SensitivityReport>(pressures.size(), threads, point);
}

}  // namespace levinoise
