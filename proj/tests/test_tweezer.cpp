#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "levinoise/tweezer.hpp"

using namespace levinoise;
using constants::pi;

namespace {

ParticleSpec silica(double r = 200e-9) { return ParticleSpec::preset(Material::silica, r); }
EnvironmentSpec env13() { return EnvironmentSpec::preset(Gas::helium, 1e-13 * constants::mbar, 0.3); }
TweezerSpec tweezer(double power, TweezerGeometry g = TweezerGeometry::counter_propagating) {
  TweezerSpec t;
  t.power = power;
  t.geometry = g;
  return t;
}

}  // namespace

TEST_CASE("power limits set by the Paul trap") {
  const TrapSpec trap;
  const double single = max_power(tweezer(0.0, TweezerGeometry::single_beam), trap, silica());
  const double counter = max_power(tweezer(0.0), trap, silica());
  CHECK(single > 1e-9 / 3.0);
  CHECK(single < 3e-9);
  CHECK(counter > 1e-4 / 3.0);
  CHECK(counter < 3e-3);
  CHECK(counter / single > 1e5);

  SUBCASE("single beam scales as 1/R^3") {
    const auto tw = tweezer(0.0, TweezerGeometry::single_beam);
    const double a = max_power(tw, trap, silica(100e-9));
    const double b = max_power(tw, trap, silica(200e-9));
    CHECK(a / b == doctest::Approx(8.0).epsilon(1e-9));
  }
  SUBCASE("counter-propagating limit is independent of R") {
    CHECK(max_power(tweezer(0.0), trap, silica(100e-9)) == doctest::Approx(counter).epsilon(1e-9));
  }
  SUBCASE("limits grow as w0^2") {
    TrapSpec stiff;
    stiff.secular_frequency = 2e3;
    CHECK(max_power(tweezer(0.0), stiff, silica()) / counter == doctest::Approx(4.0));
  }
}

TEST_CASE("power above the limit is a domain error") {
  const auto tw = tweezer(10e-9, TweezerGeometry::single_beam);
  CHECK_THROWS_AS(tweezer_operating_point(tw, silica(), env13(), TrapSpec{}), DomainError);
  CHECK_THROWS_AS(tweezer_operating_point(tweezer(1e-2), silica(), env13(), TrapSpec{}), DomainError);
  CHECK_NOTHROW(tweezer_operating_point(tweezer(500e-9), silica(), env13(), TrapSpec{}));
}

TEST_CASE("operating point at 500 nW") {
  const auto op = tweezer_operating_point(tweezer(500e-9), silica(), env13(), TrapSpec{});
  CHECK(op.thermal.state.temperature == doctest::Approx(60.0).epsilon(0.25));
  CHECK(op.s_xx_nep > op.s_xx_shot);
  CHECK(op.s_recoil == doctest::Approx(0.4 * op.s_backaction));
  CHECK(op.s_recoil + op.s_backaction > op.thermal.total());
  CHECK(op.s_bias == 0.0);
}

TEST_CASE("imprecision floors scale with power") {
  const auto p = silica();
  const auto a = tweezer(1e-12), b = tweezer(4e-12);
  CHECK(nep_displacement_floor(a, p) / nep_displacement_floor(b, p) == doctest::Approx(4.0));
  // Shot floor stays 1/P while the scattered power is small against the LO.
  CHECK(shot_displacement_floor(a, p) / shot_displacement_floor(b, p) ==
        doctest::Approx(4.0).epsilon(0.01));
  const auto hi = tweezer(1e-6);
  CHECK(shot_displacement_floor(hi, p) / nep_displacement_floor(hi, p) >
        shot_displacement_floor(a, p) / nep_displacement_floor(a, p));
  auto quiet = a;
  quiet.nep = 0.0;
  CHECK(nep_displacement_floor(quiet, p) == 0.0);
  CHECK(std::isinf(shot_displacement_floor(tweezer(0.0), p)));
}

TEST_CASE("homodyne spectrum") {
  const auto grid = make_linear_grid(950.0, 1050.0, 2001);
  const auto s = homodyne_psd(tweezer(500e-9), silica(), env13(), TrapSpec{}, grid);
  CHECK(s.units() == SpectrumUnits::shot_normalized);
  for (double v : s.total()) CHECK(v >= 1.0);
  for (double v : s.channel("shot")) CHECK(v == 1.0);

  const auto q = s.channel("quantum");
  const auto th = s.channel("thermal");
  const auto peak = std::max_element(q.begin(), q.end()) - q.begin();
  CHECK(grid[static_cast<std::size_t>(peak)] == doctest::Approx(1000.0).epsilon(1e-3));
  CHECK(q[static_cast<std::size_t>(peak)] > th[static_cast<std::size_t>(peak)]);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double sum = 0.0;
    for (const auto& ch : s.channels()) sum += ch.values[i];
    CHECK(s.total()[i] == doctest::Approx(sum).epsilon(1e-14));
  }
}

TEST_CASE("vanishing power gives a flat spectrum") {
  const auto grid = make_log_grid(10.0, 1e5, 301);
  TrapSpec damped;
  damped.damping = 2.0 * pi * 10.0;
  const auto s = homodyne_psd(tweezer(1e-15), silica(), env13(), damped, grid);
  const auto nep = s.channel("nep");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(s.channel("quantum")[i] < 1e-9);
    CHECK(nep[i] == doctest::Approx(nep[0]));
    CHECK(s.total()[i] == doctest::Approx(1.0 + nep[0]).epsilon(1e-6));
  }
}

TEST_CASE("power sweep") {
  const std::vector<double> powers{50e-9, 100e-9, 200e-9, 500e-9, 1e-6, 2e-6};
  const auto nep = sensitivity_sweep(tweezer(0.0), silica(), env13(), TrapSpec{}, powers, 1e-7,
                                     TweezerFloor::nep);
  const auto shot = sensitivity_sweep(tweezer(0.0), silica(), env13(), TrapSpec{}, powers, 1e-7,
                                      TweezerFloor::shot, 3);
  REQUIRE(nep.size() == powers.size());
  for (std::size_t i = 0; i < powers.size(); ++i) {
    CHECK(nep[i].value == powers[i]);
    CHECK(nep[i].scheme == "tweezer");
    CHECK(nep[i].floor == "nep");
    CHECK(shot[i].floor == "shot");
    CHECK(nep[i].s_xx > shot[i].s_xx);
    CHECK(nep[i].s_ff == shot[i].s_ff);
    CHECK(nep[i].lambda_min == shot[i].lambda_min);
    CHECK(nep[i].bandwidth < shot[i].bandwidth);
    CHECK(nep[i].flags.empty());
    if (i > 0) {
      CHECK(nep[i].lambda_min > nep[i - 1].lambda_min);
      CHECK(nep[i].temperature > nep[i - 1].temperature);
    }
  }
  CHECK(nep.back().dominant == "backaction");
  CHECK(max_power(tweezer(0.0), TrapSpec{}, silica()) / powers.front() > 200.0);
  CHECK_THROWS_AS(sensitivity_sweep(tweezer(0.0), silica(), env13(), TrapSpec{}, {}, 1e-7,
                                    TweezerFloor::nep),
                  DomainError);
}

TEST_CASE("single-beam sweep is flagged") {
  const auto r = sensitivity_sweep(tweezer(0.0, TweezerGeometry::single_beam), silica(), env13(),
                                   TrapSpec{}, {1e-10, 5e-10}, 1e-7, TweezerFloor::shot);
  REQUIRE(r.size() == 2);
  CHECK(r[0].flags == std::vector<std::string>{"single-beam"});
}

TEST_CASE("spec validation") {
  auto t = tweezer(1e-7);
  t.numerical_aperture = 1.2;
  CHECK_THROWS_AS(validate(t), DomainError);
  t = tweezer(-1.0);
  CHECK_THROWS_AS(validate(t), DomainError);
  t = tweezer(1e-7);
  t.harmonic_region = 0.0;
  CHECK_THROWS_AS(validate(t), DomainError);
  CHECK(tweezer(1e-7).focal_waist() == doctest::Approx(1550e-9 / (pi * 0.6)));
}
