#include <doctest.h>

#include <cmath>
#include <vector>

#include "levinoise/cavity.hpp"
#include "levinoise/csl.hpp"

using namespace levinoise;
using constants::pi;

namespace {

ParticleSpec silica() { return ParticleSpec::preset(Material::silica, 200e-9); }
EnvironmentSpec env13() { return EnvironmentSpec::preset(Gas::helium, 1e-13 * constants::mbar, 0.3); }
CavitySpec cavity(double p_in = 10e-6) {
  CavitySpec c;
  c.input_power = p_in;
  return c;
}

}  // namespace

TEST_CASE("dispersive shift and slope") {
  const double g_o = 5e5, k = 2.0 * pi / 1064e-9;
  const auto a = dispersive_shift(g_o, 0.0, k);
  CHECK(a.shift == doctest::Approx(g_o));
  CHECK(a.slope == doctest::Approx(0.0).epsilon(1e-12));
  const auto b = dispersive_shift(g_o, pi / 4.0, k);
  CHECK(b.shift == doctest::Approx(g_o / 2.0));
  CHECK(std::abs(b.slope) == doctest::Approx(g_o * k));
  for (double phi : {0.1, 0.5, 1.0, 1.4})
    CHECK(std::abs(dispersive_shift(g_o, phi, k).slope) <= std::abs(b.slope));
}

TEST_CASE("derived cavity quantities") {
  const auto c = cavity();
  const auto d = cavity_derived(c, silica(), TrapSpec{});
  CHECK(d.kappa == doctest::Approx(pi * constants::c / (2.0 * 15e-3 * 1000.0)));
  CHECK(d.kappa_in == doctest::Approx(0.1 * d.kappa));
  CHECK(d.kappa_in + d.kappa_out == doctest::Approx(d.kappa));
  CHECK(d.g / (2.0 * pi) == doctest::Approx(5.0).epsilon(0.5));
  const double x_zpf = std::sqrt(constants::hbar / (2.0 * particle_mass(silica()) * 2.0 * pi * 1e3));
  CHECK(d.x_zpf == doctest::Approx(x_zpf));
  CHECK(d.g == doctest::Approx(x_zpf * c.wavenumber() * d.g_o));
  CHECK(d.absorbed_power > 0.0);
  CHECK(d.scattered_power > 0.0);
}

TEST_CASE("optical trap frequency") {
  const TrapSpec trap;
  const auto a = optical_trap_frequency(cavity(5e-6), silica(), trap);
  const auto b = optical_trap_frequency(cavity(20e-6), silica(), trap);
  CHECK(b.omega_t / a.omega_t == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_FALSE(b.exceeds_secular);
  CHECK(b.omega_t > 0.9 * trap.omega0());
  CHECK(optical_trap_frequency(cavity(25e-6), silica(), trap).exceeds_secular);
  CHECK(optical_trap_frequency(cavity(1e-18), silica(), trap).omega_t < 1e-3 * trap.omega0());
}

TEST_CASE("bad-cavity regime is enforced") {
  auto c = cavity();
  c.finesse = 1e8;
  CHECK_THROWS_AS(cavity_operating_point(c, silica(), env13(), TrapSpec{}), DomainError);
}

TEST_CASE("homodyne spectrum at 10 uW") {
  const auto grid = make_linear_grid(990.0, 1010.0, 2001);
  const auto s = homodyne_psd(cavity(), silica(), env13(), TrapSpec{}, grid);
  const auto op = cavity_operating_point(cavity(), silica(), env13(), TrapSpec{});
  bool floor_ok = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    floor_ok = floor_ok && s.total()[i] >= 1.0 && s.channel("shot")[i] == 1.0;
  }
  CHECK(floor_ok);
  const std::size_t peak = 1000;
  CHECK(s.channel("quantum")[peak] > s.channel("thermal")[peak]);
  CHECK(op.s_recoil > op.s_backaction);
  CHECK(op.s_recoil > op.thermal.total());
  CHECK(op.thermal.state.temperature > 15.0);
  // Frequency noise dominates the wings.
  CHECK(s.channel("frequency-noise")[0] > s.channel("quantum")[0]);
  const double w_fn = 4.0 * pi * pi * 4e8 / (1e3 * 1e3) / std::pow(op.derived.g_o * cavity().wavenumber(), 2);
  CHECK(frequency_noise_floor(cavity(), op.derived, 1e3) == doctest::Approx(w_fn).epsilon(1e-12));
  CHECK(s.channel("frequency-noise")[peak] == doctest::Approx(w_fn / op.s_xx_shot).epsilon(1e-12));
}

TEST_CASE("vanishing power leaves the shot floor") {
  const auto grid = make_linear_grid(900.0, 1100.0, 201);
  const auto s = homodyne_psd(cavity(1e-15), silica(), env13(), TrapSpec{}, grid);
  for (std::size_t i = 0; i < grid.size(); i += 20) {
    if (std::abs(grid[i] - 1e3) < 1.0) continue;
    CHECK(s.total()[i] == doctest::Approx(1.0).epsilon(1e-2));
  }
}

TEST_CASE("zero detuning leaves the susceptibility bare") {
  const auto op = cavity_operating_point(cavity(), silica(), env13(), TrapSpec{});
  for (double w : {1000.0, 6283.0, 7000.0}) {
    const auto a = effective_susceptibility(op, cavity(), w);
    const auto b = susceptibility(op.oscillator, w);
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
  }
  const auto sp = optical_spring(op, cavity());
  CHECK(sp.frequency_shift == 0.0);
  CHECK(sp.damping_shift == 0.0);
}

TEST_CASE("detuning limit") {
  const TrapSpec trap;
  const auto op = cavity_operating_point(cavity(), silica(), env13(), trap);
  const double gamma = op.oscillator.damping;
  const double dl = detuning_limit(cavity(), silica(), trap, gamma);
  CHECK(detuning_limit(cavity(20e-6), silica(), trap, gamma) == doctest::Approx(dl / 2.0));
  CHECK(detuning_limit(cavity(), silica(), trap, 3.0 * gamma) == doctest::Approx(3.0 * dl));
  // At the limit the optical spring moves the resonance by half the linewidth.
  auto c = cavity();
  c.detuning = dl;
  const auto sp = optical_spring(cavity_operating_point(c, silica(), env13(), trap), c);
  CHECK(std::abs(sp.frequency_shift) == doctest::Approx(gamma / 2.0).epsilon(1e-3));
  CHECK(sp.frequency_shift < 0.0);
}

TEST_CASE("linearity check") {
  const OscillatorSpec o{particle_mass(silica()), 2.0 * pi * 1e3, 1e-8};
  CHECK(linearity_check(o, 0.0, 1064e-9).pass);
  CHECK(linearity_check(o, 0.0, 1064e-9).required_factor == 1.0);
  const auto a = linearity_check(o, 10.0, 1064e-9);
  const auto b = linearity_check(o, 40.0, 1064e-9);
  CHECK(b.dx_rms / a.dx_rms == doctest::Approx(2.0));
  CHECK_FALSE(b.pass);
  CHECK(b.required_factor == doctest::Approx(std::pow(16.0 * b.dx_rms / 1064e-9, 2)));
  CHECK_THROWS_AS(linearity_check(o, -1.0, 1064e-9), DomainError);
}

TEST_CASE("sensitivity sweep over the usable power range") {
  std::vector<double> powers;
  for (int i = 0; i < 12; ++i) powers.push_back(0.1e-6 * std::pow(200.0, i / 11.0));
  const auto shot = sensitivity_sweep(cavity(), silica(), env13(), TrapSpec{}, powers, 1e-7, CavityFloor::shot, 3);
  const auto fn = sensitivity_sweep(cavity(), silica(), env13(), TrapSpec{}, powers, 1e-7,
                                    CavityFloor::frequency_noise);
  REQUIRE(shot.size() == powers.size());
  for (std::size_t i = 0; i < powers.size(); ++i) {
    CHECK(shot[i].scheme == "cavity");
    CHECK(shot[i].value == powers[i]);
    CHECK(shot[i].lambda_min == fn[i].lambda_min);
    CHECK(shot[i].bandwidth > fn[i].bandwidth);
    CHECK(shot[i].dominant == "photon-recoil");
    if (i > 0) {
      CHECK(shot[i].lambda_min > shot[i - 1].lambda_min);
      CHECK(shot[i].s_xx < shot[i - 1].s_xx);
    }
  }
  CHECK(shot.back().temperature / shot.front().temperature > 2.0);
  // Within the power window the optical trap stays below the secular frequency.
  for (const auto& r : shot)
    for (const auto& f : r.flags) CHECK(f != "optical-trap-exceeds-secular");
  // Thermal-only reference at the lowest power.
  const auto op = cavity_operating_point(cavity(powers[0]), silica(), env13(), TrapSpec{});
  CHECK(shot[0].lambda_min == doctest::Approx(lambda_min(silica(), 1e-7, op.s_ff_total())));
}

TEST_CASE("shot-limited imprecision as an equivalent mirror displacement") {
  const auto c = cavity();
  const auto op = cavity_operating_point(c, silica(), env13(), TrapSpec{});
  const double conv = c.length * op.derived.coupling / c.omega_laser();
  const double mirror = op.s_xx_shot * conv * conv;
  CHECK(mirror > 1e-33 / 3.0);
  CHECK(mirror < 3e-33);
}

TEST_CASE("sweep flags power above the optical limit") {
  const auto r = sensitivity_sweep(cavity(), silica(), env13(), TrapSpec{}, {40e-6}, 1e-7, CavityFloor::shot);
  bool flagged = false;
  for (const auto& f : r[0].flags) flagged = flagged || f == "optical-trap-exceeds-secular";
  CHECK(flagged);
  CHECK_THROWS_AS(sensitivity_sweep(cavity(), silica(), env13(), TrapSpec{}, {}, 1e-7, CavityFloor::shot),
                  DomainError);
}
