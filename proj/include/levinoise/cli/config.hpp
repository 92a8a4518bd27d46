#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "levinoise/cavity.hpp"
#include "levinoise/cli/units.hpp"
#include "levinoise/core.hpp"
#include "levinoise/electrical.hpp"
#include "levinoise/paul_trap.hpp"
#include "levinoise/tweezer.hpp"

namespace levinoise::cli {

/// Bad config text or values. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, int line, const std::string& msg);
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

private:
  std::string field_;
  int line_;
};

enum class Kind {
  equilibrium_map,
  thermal_force,
  cavity_spectrum,
  cavity_sweep,
  tweezer_spectrum,
  tweezer_sweep,
  electrical_spectrum,
  electrical_tuned,
  electrical_sweep,
  compare,
};

std::string_view to_string(Kind k);

struct AmplifierParams {
  AmplifierKind kind = AmplifierKind::squid;
  double noise_number = 10.0;
  double input_inductance = 1e-6;
  double current_noise = -1.0;  // A/rtHz, < 0 keeps the preset
  double voltage_noise = -1.0;  // V/rtHz, < 0 keeps the preset
};

AmplifierSpec build_amplifier(const AmplifierParams& a, double omega0);

/// Every physical input of a run, in SI.
struct Model {
  ParticleSpec particle;
  Gas gas = Gas::helium;
  EnvironmentSpec environment = EnvironmentSpec::preset(Gas::helium, 1e-11, 0.3);
  TrapSpec trap;
  CavitySpec cavity;
  std::vector<CavityFloor> cavity_floors{CavityFloor::shot, CavityFloor::frequency_noise};
  TweezerSpec tweezer;
  std::vector<TweezerFloor> tweezer_floors{TweezerFloor::nep, TweezerFloor::shot};
  TransformerSpec transformer;
  AmplifierParams amplifier;
  double absorbed_power = 0.0;  // W, thermal kinds only
  double r_c = 1e-7;            // m
};

/// A swept numeric field and its SI values.
struct Sweep {
  std::string parameter;  // dotted path, e.g. "cavity.input_power"
  Dimension dimension = Dimension::dimensionless;
  std::vector<double> values;
};

struct SpectrumGrid {
  double f_min = 0.0;
  double f_max = 0.0;
  std::size_t points = 0;
  Spacing spacing = Spacing::linear;
  FrequencyGrid build() const;
};

struct CompareGrids {
  std::vector<double> cavity_powers;
  std::vector<double> tweezer_powers;
  std::vector<double> pressures;
};

struct RunConfig {
  Kind kind = Kind::thermal_force;
  std::string name;
  std::string source;  // file name or "recipe:<name>"
  std::string text;    // raw config text, hashed into the manifest
  Model model;
  std::optional<Sweep> series;  // outer loop
  std::optional<Sweep> sweep;   // inner loop
  std::optional<SpectrumGrid> spectrum;
  bool force_referred = true;   // electrical_tuned: force or current spectrum
  CompareGrids compare;
  std::string output_directory;
};

/// Parse and check a config. Throws ConfigError with line and field.
RunConfig parse_config(const std::string& text, const std::string& source,
                       const std::string& default_name);

/// Set a numeric field by dotted path. Throws ConfigError for unknown paths.
void set_field(Model& m, const std::string& path, double value);
double get_field(const Model& m, const std::string& path);
Dimension field_dimension(const std::string& path);
std::vector<std::string> field_paths();

/// Resolved model as JSON, SI numbers only.
nlohmann::ordered_json to_json(const Model& m);

}  // namespace levinoise::cli
