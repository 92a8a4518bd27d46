#include "levinoise/cli/units.hpp"

#include <charconv>
#include <cmath>
#include <utility>

#include "levinoise/constants.hpp"

namespace levinoise::cli {

namespace {

struct Unit {
  std::string_view name;
  double scale;
};

constexpr double two_pi = 2.0 * constants::pi;

// Spellings accepted per dimension. "u" prefixes stand for micro.
std::initializer_list<Unit> units_for(Dimension d) {
  static const std::initializer_list<Unit> none{};
  static const std::initializer_list<Unit> length{
      {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"µm", 1e-6}, {"nm", 1e-9},
      {"pm", 1e-12}};
  static const std::initializer_list<Unit> mass{
      {"kg", 1.0}, {"g", 1e-3}, {"u", constants::amu}, {"amu", constants::amu}};
  static const std::initializer_list<Unit> density{{"kg/m3", 1.0}, {"kg/m^3", 1.0},
                                                   {"g/cm3", 1e3}, {"g/cm^3", 1e3}};
  static const std::initializer_list<Unit> pressure{
      {"Pa", 1.0}, {"mbar", constants::mbar}, {"bar", 1e5}};
  static const std::initializer_list<Unit> power{
      {"W", 1.0},   {"mW", 1e-3},  {"uW", 1e-6},  {"µW", 1e-6},
      {"nW", 1e-9}, {"pW", 1e-12}, {"fW", 1e-15}, {"aW", 1e-18}};
  static const std::initializer_list<Unit> temperature{{"K", 1.0}, {"mK", 1e-3}};
  static const std::initializer_list<Unit> frequency{
      {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"mHz", 1e-3}, {"uHz", 1e-6}, {"µHz", 1e-6}};
  static const std::initializer_list<Unit> angular{
      {"rad/s", 1.0}, {"Hz", two_pi}, {"kHz", two_pi * 1e3}, {"mHz", two_pi * 1e-3}};
  static const std::initializer_list<Unit> rate{{"1/s", 1.0}, {"/s", 1.0}, {"s^-1", 1.0}};
  static const std::initializer_list<Unit> charge{{"C", 1.0}, {"e", constants::e}};
  static const std::initializer_list<Unit> vnoise{
      {"V/rtHz", 1.0}, {"uV/rtHz", 1e-6}, {"nV/rtHz", 1e-9}, {"pV/rtHz", 1e-12}};
  static const std::initializer_list<Unit> inoise{
      {"A/rtHz", 1.0}, {"nA/rtHz", 1e-9}, {"pA/rtHz", 1e-12}, {"fA/rtHz", 1e-15}};
  static const std::initializer_list<Unit> pnoise{
      {"W/rtHz", 1.0}, {"pW/rtHz", 1e-12}, {"fW/rtHz", 1e-15}};
  static const std::initializer_list<Unit> inductance{
      {"H", 1.0}, {"mH", 1e-3}, {"uH", 1e-6}, {"µH", 1e-6}, {"nH", 1e-9}};
  static const std::initializer_list<Unit> capacitance{
      {"F", 1.0}, {"uF", 1e-6}, {"µF", 1e-6}, {"nF", 1e-9}, {"pF", 1e-12}, {"fF", 1e-15}};
  switch (d) {
    case Dimension::dimensionless: return none;
    case Dimension::length: return length;
    case Dimension::mass: return mass;
    case Dimension::density: return density;
    case Dimension::pressure: return pressure;
    case Dimension::power: return power;
    case Dimension::temperature: return temperature;
    case Dimension::frequency: return frequency;
    case Dimension::angular_rate: return angular;
    case Dimension::rate: return rate;
    case Dimension::charge: return charge;
    case Dimension::voltage_noise: return vnoise;
    case Dimension::current_noise: return inoise;
    case Dimension::power_noise: return pnoise;
    case Dimension::inductance: return inductance;
    case Dimension::capacitance: return capacitance;
  }
  return none;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::dimensionless: return "dimensionless number";
    case Dimension::length: return "length";
    case Dimension::mass: return "mass";
    case Dimension::density: return "density";
    case Dimension::pressure: return "pressure";
    case Dimension::power: return "power";
    case Dimension::temperature: return "temperature";
    case Dimension::frequency: return "frequency";
    case Dimension::angular_rate: return "angular frequency";
    case Dimension::rate: return "rate";
    case Dimension::charge: return "charge";
    case Dimension::voltage_noise: return "voltage noise amplitude";
    case Dimension::current_noise: return "current noise amplitude";
    case Dimension::power_noise: return "noise equivalent power";
    case Dimension::inductance: return "inductance";
    case Dimension::capacitance: return "capacitance";
  }
  return "";
}

std::string_view example(Dimension d) {
  switch (d) {
    case Dimension::dimensionless: return "0.4";
    case Dimension::length: return "200 nm";
    case Dimension::mass: return "4.0026 u";
    case Dimension::density: return "2200 kg/m3";
    case Dimension::pressure: return "1e-13 mbar";
    case Dimension::power: return "10 uW";
    case Dimension::temperature: return "300 mK";
    case Dimension::frequency: return "1 kHz";
    case Dimension::angular_rate: return "0 rad/s";
    case Dimension::rate: return "1e-8 1/s";
    case Dimension::charge: return "1000 e";
    case Dimension::voltage_noise: return "10 nV/rtHz";
    case Dimension::current_noise: return "1 fA/rtHz";
    case Dimension::power_noise: return "10 fW/rtHz";
    case Dimension::inductance: return "10 H";
    case Dimension::capacitance: return "0.1 pF";
  }
  return "";
}

std::optional<double> parse_quantity(std::string_view text, Dimension d, std::string* error) {
  auto fail = [&](std::string msg) -> std::optional<double> {
    if (error) *error = std::move(msg);
    return std::nullopt;
  };
  const std::string_view s = trim(text);
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr == first) return fail("no leading number in '" + std::string(s) + "'");
  if (!std::isfinite(value)) return fail("value is not finite");
  const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
  if (unit.empty()) return value;
  for (const auto& u : units_for(d)) {
    if (u.name == unit) return value * u.scale;
  }
  return fail("unit '" + std::string(unit) + "' is not a " + std::string(to_string(d)) +
              " (e.g. '" + std::string(example(d)) + "')");
}

}  // namespace levinoise::cli
