#include <doctest.h>

#include <cmath>

#include "levinoise/paul_trap.hpp"

using namespace levinoise;
using constants::e;

TEST_CASE("bias noise floor") {
  TrapSpec t;
  t.bias_voltage_noise = 10e-9;
  t.electrode_distance = 500e-6;
  CHECK(std::sqrt(bias_noise_force_psd(t, 30 * e)) == doctest::Approx(9.613059804e-23).epsilon(1e-12));
  CHECK(std::sqrt(bias_noise_force_psd(t, 30 * e)) == doctest::Approx(9.6e-23).epsilon(0.01));
  CHECK(bias_noise_force_psd(t, 0.0) == 0.0);
}

TEST_CASE("bias noise scaling") {
  TrapSpec t;
  t.bias_voltage_noise = 3e-9;
  const double s = bias_noise_force_psd(t, 50 * e);
  CHECK(bias_noise_force_psd(t, 100 * e) / s == doctest::Approx(4.0));
  t.bias_voltage_noise = 6e-9;
  CHECK(bias_noise_force_psd(t, 50 * e) / s == doctest::Approx(4.0));
  t.electrode_distance *= 2.0;
  CHECK(bias_noise_force_psd(t, 50 * e) / s == doctest::Approx(1.0));
}

TEST_CASE("transduction factor") {
  TrapSpec t;
  t.electrode_distance = 300e-6;
  CHECK(transduction_factor(t, 1000 * e) == doctest::Approx(5.34058878e-13).epsilon(1e-9));
  CHECK(transduction_factor(t, 0.0) == 0.0);
  const double b = transduction_factor(t, 1000 * e);
  t.electrode_distance = 600e-6;
  CHECK(transduction_factor(t, 1000 * e) == doctest::Approx(b / 2.0));
}

TEST_CASE("trap validation") {
  TrapSpec t;
  CHECK(t.omega0() == doctest::Approx(2.0 * constants::pi * 1e3));
  CHECK_NOTHROW(validate(t));
  t.secular_frequency = 0.0;
  CHECK_THROWS_AS(validate(t), DomainError);
  t = {};
  t.electrode_distance = -1.0;
  CHECK_THROWS_AS(validate(t), DomainError);
  t = {};
  t.bias_voltage_noise = -1.0;
  CHECK_THROWS_AS(validate(t), DomainError);
}
