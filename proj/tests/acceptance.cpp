// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (0 when all pass).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "levinoise/cavity.hpp"
#include "levinoise/cli/config.hpp"
#include "levinoise/cli/recipes.hpp"
#include "levinoise/cli/runner.hpp"
#include "levinoise/csl.hpp"
#include "levinoise/electrical.hpp"
#include "levinoise/measurement.hpp"
#include "levinoise/thermal.hpp"
#include "levinoise/tweezer.hpp"

using namespace levinoise;
using constants::hbar;
using constants::k_B;
using constants::pi;
namespace fs = std::filesystem;

namespace {

int failures = 0;

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct Part {
  std::string text;
  bool ok;
};

void report(int id, const std::vector<Part>& parts) {
  bool ok = true;
  std::string detail;
  for (const auto& p : parts) {
    ok = ok && p.ok;
    if (!detail.empty()) detail += "; ";
    detail += p.text + (p.ok ? "" : " [fail]");
  }
  if (!ok) ++failures;
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

bool within_factor(double v, double target, double factor) {
  return v >= target / factor && v <= target * factor;
}
bool within_rel(double v, double target, double rel) { return std::abs(v / target - 1.0) <= rel; }

ParticleSpec silica(double r = 200e-9, double q = 0.0) {
  return ParticleSpec::preset(Material::silica, r, q);
}
EnvironmentSpec helium(double p_mbar) {
  return EnvironmentSpec::preset(Gas::helium, p_mbar * constants::mbar, 0.3);
}
TrapSpec electrical_trap() {
  TrapSpec t;
  t.electrode_distance = 300e-6;
  return t;
}
AmplifierSpec squid() { return squid_amplifier(10.0, 1e-6); }

struct Electrical {
  OscillatorSpec osc;
  MechanicalForces forces;
  double beta;
};

Electrical electrical_setup(const ParticleSpec& p, double p_mbar) {
  const auto th = thermal_force(p, helium(p_mbar), 0.0);
  const auto trap = electrical_trap();
  return {{particle_mass(p), trap.omega0(), th.coupling.total_damping()},
          {th.gas, th.blackbody, 0.0},
          transduction_factor(trap, p.charge)};
}

std::vector<double> logspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = a * std::pow(b / a, static_cast<double>(i) / static_cast<double>(n - 1));
  return v;
}

double slope_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::log(x[i]), b = std::log(y[i]);
    sx += a, sy += b, sxx += a * a, sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

using big = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<200, boost::multiprecision::digit_base_2>>;

double bracket_oracle(double u_in) {
  const big u = u_in;
  const big b = 1 + exp(-u) + 2 / u * (exp(-u) - 1);
  return b.convert_to<double>();
}

std::complex<double> two_port_force_transfer(const OscillatorSpec& o, double b,
                                             const TransformerSpec& tr, const AmplifierSpec& amp,
                                             double w) {
  using cd = std::complex<double>;
  const cd j(0.0, 1.0);
  const double ls2 = tr.secondary_inductance + amp.input_inductance;
  const double M = tr.mutual();
  const double R = o.omega0 * tr.primary_inductance / tr.quality_factor;
  const cd zm = o.mass / (b * b) * (o.omega0 * o.omega0 - w * w + j * w * o.damping) / (j * w);
  const cd zp = j * w * tr.primary_inductance * (1.0 - M * M / (tr.primary_inductance * ls2)) + R;
  const cd zc = 1.0 / (j * w * tr.shunt_capacitance());
  const cd zload = zc * zp / (zc + zp);
  return (1.0 / b) * zload / (zm + zload) / zp * (-M / ls2);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion1() {
  TrapSpec t;
  t.bias_voltage_noise = 10e-9;
  t.electrode_distance = 500e-6;
  const double s = std::sqrt(bias_noise_force_psd(t, 30.0 * constants::e));
  report(1, {{"sqrt(S_ff) = " + fmt("%.4g", s) + " N/rtHz", within_rel(s, 9.6e-23, 0.01)}});
}

void criterion2() {
  const double beta = transduction_factor(electrical_trap(), 1000.0 * constants::e);
  const auto lc = equivalent_lc({6e-17, 2.0 * pi * 1e3, 1e-8}, beta);
  report(2, {{"L_m = " + fmt("%.4g", lc.inductance) + " H", within_rel(lc.inductance, 2e8, 0.10)},
             {"C_m = " + fmt("%.4g", lc.capacitance) + " F", within_rel(lc.capacitance, 1e-16, 0.25)}});
}

void criterion3() {
  AmplifierSpec amp;
  amp.s_ii = 1e-13 * 1e-13;
  const double beta = transduction_factor(electrical_trap(), 1000.0 * constants::e);
  const double sx = std::sqrt(direct_coupling_displacement_noise(amp, beta, 2.0 * pi * 1e3));
  report(3, {{"sqrt(S_xx) = " + fmt("%.4g", sx) + " m/rtHz", within_rel(sx, 30e-6, 0.10)}});
}

void criterion4() {
  const auto r = sensitivity_sweep(silica(200e-9, 1000.0 * constants::e), helium(1e-12),
                                   electrical_trap(), TransformerSpec{}, squid(),
                                   {1e-12 * constants::mbar}, 1e-7)[0];
  report(4, {{"lambda_min = " + fmt("%.3g", r.lambda_min) + " /s",
              within_factor(r.lambda_min, 6e-14, 2.0)},
             {"df = " + fmt("%.3g", r.bandwidth * 1e3) + " mHz", r.bandwidth < 1e-3}});
}

void criterion5() {
  const auto os = ParticleSpec::preset(Material::osmium, 400e-9, 1000.0 * constants::e);
  const auto r = sensitivity_sweep(os, helium(1e-12), electrical_trap(), TransformerSpec{}, squid(),
                                   {1e-12 * constants::mbar}, 1e-7)[0];
  report(5, {{"lambda_min = " + fmt("%.3g", r.lambda_min) + " /s",
              within_factor(r.lambda_min, 3e-16, 2.0)},
             {"df = " + fmt("%.3g", r.bandwidth * 1e6) + " uHz", within_factor(r.bandwidth, 2e-6, 3.0)}});
}

void criterion6() {
  const auto s = electrical_setup(silica(200e-9, 1000.0 * constants::e), 1e-12);
  const auto amp = squid();
  const auto grid = make_linear_grid(999.5, 1000.5, 401);
  const auto t = tuned_lc_solution(s.osc, s.beta, TransformerSpec{}, amp, 0.3, s.forces, grid);

  TransformerSpec detuned;
  detuned.tuning_capacitance = tuned_capacitance(detuned, amp, 30.0 * s.osc.omega0);
  const auto near = make_linear_grid(999.9, 1000.1, 201);
  const auto a = solve_circuit(s.osc, s.beta, TransformerSpec{}, amp, 0.3, s.forces, near);
  const auto b = solve_circuit(s.osc, s.beta, detuned, amp, 0.3, s.forces, near);
  double worst = 0.0;
  for (std::size_t i = 0; i < near.size(); ++i)
    worst = std::max(worst, std::abs(b.force_referred.total()[i] / a.force_referred.total()[i] - 1.0));

  report(6, {{"splitting = " + fmt("%.3g", t.modes.splitting) + " Hz", t.modes.splitting < 1.0},
             {"antiresonance bandwidth = " + fmt("%.3g", t.modes.antiresonance_bandwidth * 1e3) + " mHz",
              within_factor(t.modes.antiresonance_bandwidth, 0.2e-3, 3.0)},
             {"detuned-LC deviation = " + fmt("%.2g", worst), worst <= 0.01}});
}

void criterion7() {
  const auto powers = logspace(0.1e-6, 20e-6, 12);
  const auto p = silica();
  const auto env = helium(1e-13);
  const auto shot = sensitivity_sweep(CavitySpec{}, p, env, TrapSpec{}, powers, 1e-7, CavityFloor::shot);
  const auto fn = sensitivity_sweep(CavitySpec{}, p, env, TrapSpec{}, powers, 1e-7,
                                    CavityFloor::frequency_noise);
  std::vector<double> w, temps;
  for (double pw : powers) {
    CavitySpec c;
    c.input_power = pw;
    const auto op = cavity_operating_point(c, p, env, TrapSpec{});
    w.push_back(op.derived.absorbed_power);
    temps.push_back(op.thermal.state.temperature);
  }
  const double slope = slope_loglog(w, temps);
  report(7, {{"T = " + fmt("%.3g", temps.front()) + ".." + fmt("%.3g", temps.back()) + " K",
              within_rel(temps.front(), 20.0, 0.25) && within_rel(temps.back(), 70.0, 0.25)},
             {"dlogT/dlogW = " + fmt("%.4f", slope), std::abs(slope - 0.2) <= 0.01},
             {"df(freq-noise) = " + fmt("%.3g", fn.front().bandwidth) + ".." +
                  fmt("%.3g", fn.back().bandwidth) + " Hz",
              within_factor(fn.front().bandwidth, 0.15, 2.0) &&
                  within_factor(fn.back().bandwidth, 2.0, 2.0)},
             {"df(shot) = " + fmt("%.3g", shot.front().bandwidth) + ".." +
                  fmt("%.3g", shot.back().bandwidth) + " Hz",
              within_factor(shot.front().bandwidth, 0.4, 2.0) &&
                  within_factor(shot.back().bandwidth, 60.0, 2.0)}});
}

void criterion8() {
  const CavitySpec c;  // 10 uW
  const auto p = silica();
  const auto op = cavity_operating_point(c, p, helium(1e-13), TrapSpec{});
  const auto lin = linearity_check(op.oscillator, op.thermal.state.temperature, c.wavelength);
  const double dmax = detuning_limit(c, p, TrapSpec{}, op.oscillator.damping);
  const double kappa = c.kappa();
  report(8, {{"dx_rms = " + fmt("%.3g", lin.dx_rms / c.wavelength) + " lambda",
              within_factor(lin.dx_rms / c.wavelength, 0.4, 2.0)},
             {"damping increase = " + fmt("%.3g", lin.required_factor),
              within_factor(lin.required_factor, 100.0, 2.0)},
             {"detuning limit = " + fmt("%.3g", dmax / kappa) + " kappa",
              within_factor(dmax / kappa, 1e-7, 3.0)}});
}

void criterion9() {
  const TrapSpec trap;
  const auto p = silica();
  TweezerSpec single;
  single.geometry = TweezerGeometry::single_beam;
  TweezerSpec counter;
  counter.power = 500e-9;
  const double ps = max_power(single, trap, p);
  const double pc = max_power(counter, trap, p);
  const double T = tweezer_operating_point(counter, p, helium(1e-13), trap).thermal.state.temperature;
  report(9, {{"single-beam P_max = " + fmt("%.3g", ps * 1e9) + " nW", within_factor(ps, 1e-9, 3.0)},
             {"counter-propagating P_max = " + fmt("%.3g", pc * 1e3) + " mW",
              within_factor(pc, 1e-3, 3.0)},
             {"T(500 nW) = " + fmt("%.3g", T) + " K", within_rel(T, 60.0, 0.25)}});
}

void criterion10() {
  const OscillatorSpec o{particle_mass(silica()), 2.0 * pi * 1e3, 1e-8};
  const double s_ff = 1e-45;
  const double g = heating_rate(o, s_ff);
  double worst = 0.0;
  for (double n : {1.0, 2.0, 10.0, 1e3, 1e6}) {
    const MeasurementBudget b{n * n * hbar * hbar / s_ff, s_ff};
    const double df = measurement_bandwidth(o, b).delta_f;
    worst = std::max(worst, std::abs(df / (2.0 * g / (pi * n)) - 1.0));
  }
  report(10, {{"max relative deviation = " + fmt("%.2g", worst), worst < 1e-12}});
}

void criterion11() {
  std::vector<Part> parts;

  {  // CSL bracket
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double u = 1e-3 * std::pow(10.0, 2.0 * i / 400.0);
      worst = std::max(worst, std::abs(csl_bracket(u) / bracket_oracle(u) - 1.0));
    }
    bool mono = true;
    double prev = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double v = csl_bracket(std::pow(10.0, -8.0 + 12.0 * i / 10000.0));
      mono = mono && v > prev && v < 1.0;
      prev = v;
    }
    parts.push_back({"bracket monotone, series/direct " + fmt("%.1g", worst), mono && worst < 1e-9});
  }
  {  // SNR against a volume background
    double best_x = 0.0, best = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double x = 0.5 + 5.0 * i / 4000.0;
      const double snr = csl_force_psd(silica(x * 1e-7), {1.0, 1e-7}) / std::pow(x * 1e-7, 3);
      if (snr > best) best = snr, best_x = x;
    }
    parts.push_back({"SNR peak R/r_C = " + fmt("%.3f", best_x), best_x >= 2.0 && best_x <= 3.0});
  }
  {  // heat balance
    double worst = 0.0;
    for (double p_mbar : {1e-13, 1e-10, 1e-6})
      for (double w : {1e-18, 1e-14, 1e-10}) {
        const auto st = thermal_state(silica(), helium(p_mbar), w);
        worst = std::max(worst, std::abs(w + st.gas_heat_flow + st.blackbody_heat_flow) / w);
      }
    parts.push_back({"heat balance " + fmt("%.1g", worst), worst < 1e-9});
  }
  {  // equipartition through the electrical circuit
    auto s = electrical_setup(silica(200e-9, 1000.0 * constants::e), 1e-12);
    s.osc.damping = 2.0 * pi;
    const double T = 4.0;
    s.forces = {4.0 * k_B * T * s.osc.mass * s.osc.damping, 0.0, 0.0};
    const auto amp = squid();
    const auto grid = make_log_grid(10.0, 1e5, 200001);
    const auto sol = solve_circuit(s.osc, s.beta, TransformerSpec{}, amp, 0.3, s.forces, grid);
    const auto gas = sol.output.channel("gas");
    double var = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double hxi2 =
          amp.s_ii / displacement_imprecision(s.osc, s.beta, TransformerSpec{}, amp, 2.0 * pi * grid[i]);
      const double y = gas[i] / hxi2;
      if (i > 0) var += 0.5 * (y + prev) * (grid[i] - grid[i - 1]);
      prev = y;
    }
    const double ratio = var / (k_B * T / (s.osc.mass * s.osc.omega0 * s.osc.omega0));
    parts.push_back({"equipartition " + fmt("%.4f", ratio), std::abs(ratio - 1.0) <= 0.02});
  }
  {  // two-port oracle
    const auto s = electrical_setup(silica(200e-9, 1000.0 * constants::e), 1e-12);
    const auto amp = squid();
    double worst = 0.0;
    for (double c_tune : {0.0, 1e-9, tuned_capacitance(TransformerSpec{}, amp, s.osc.omega0)}) {
      TransformerSpec tr;
      tr.tuning_capacitance = c_tune;
      const auto grid = make_log_grid(10.0, 1e5, 401);
      const auto sol = solve_circuit(s.osc, s.beta, tr, amp, 0.3, s.forces, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto ref = two_port_force_transfer(s.osc, s.beta, tr, amp, 2.0 * pi * grid[i]);
        worst = std::max(worst, std::abs(sol.h_force[i] - ref) / std::abs(ref));
      }
    }
    parts.push_back({"two-port " + fmt("%.1g", worst), worst <= 1e-6});
  }
  {  // stroboscopic Monte Carlo
    const OscillatorSpec o{1e-16, 2.0 * pi * 1e3, 1e-6};
    const double s_ff = 1e-47;
    const double gt = 100.0;
    const double t = gt / heating_rate(o, s_ff);
    const auto st = simulate_reheating(o, s_ff, t, 10000, 2024, 8, 4);
    const double expected = stroboscopic_estimate_uncertainty(st.gamma_true, t, 0.0, 0.0);
    parts.push_back({"MC sigma/gamma = " + fmt("%.3f", st.relative_sigma()) + " vs " +
                         fmt("%.3f", expected) + " at gamma t = 100",
                     within_rel(st.relative_sigma(), expected, 0.10)});
  }
  {  // shot-normalized spectra
    const auto grid = make_log_grid(10.0, 1e5, 2001);
    double lowest = HUGE_VAL;
    for (double pw : {0.1e-6, 1e-6, 10e-6, 20e-6}) {
      CavitySpec c;
      c.input_power = pw;
      const auto s = homodyne_psd(c, silica(), helium(1e-13), TrapSpec{}, grid);
      for (double v : s.total()) lowest = std::min(lowest, v);
    }
    for (double pw : {1e-12, 1e-9, 500e-9, 100e-6}) {
      TweezerSpec tw;
      tw.power = pw;
      const auto s = homodyne_psd(tw, silica(), helium(1e-13), TrapSpec{}, grid);
      for (double v : s.total()) lowest = std::min(lowest, v);
    }
    parts.push_back({"min shot-normalized PSD " + fmt("%.6g", lowest), lowest >= 1.0});
  }
  {  // byte-identical CLI reruns
    const fs::path base = fs::temp_directory_path() / "levinoise_acceptance";
    fs::remove_all(base);
    bool same = true;
    std::size_t files = 0;
    for (const char* name : {"compare", "fig12", "fig3"}) {
      const auto cfg = cli::load_config(name);
      const auto a = cli::run(cfg, (base / "a").string(), 1);
      const auto b = cli::run(cfg, (base / "b").string(), 8);
      same = same && a.files.size() == b.files.size();
      for (const auto& f : a.files) {
        const auto leaf = fs::path(f).filename();
        same = same && slurp(base / "a" / leaf) == slurp(base / "b" / leaf);
        ++files;
      }
    }
    fs::remove_all(base);
    parts.push_back({"reruns identical over " + std::to_string(files) + " files", same && files > 0});
  }
  report(11, parts);
}

}  // namespace

int main() {
  const auto criteria = {criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
                         criterion7, criterion8, criterion9, criterion10, criterion11};
  for (auto c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      ++failures;
      std::printf("criterion: FAIL  exception: %s\n", e.what());
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures;
}
