#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace levinoise::cli {

enum class Dimension {
  dimensionless,
  length,
  mass,
  density,
  pressure,
  power,
  temperature,
  frequency,
  angular_rate,
  rate,
  charge,
  voltage_noise,
  current_noise,
  power_noise,
  inductance,
  capacitance,
};

std::string_view to_string(Dimension d);

/// Example spelling used in diagnostics, e.g. "200 nm".
std::string_view example(Dimension d);

/// Parses "<number> [unit]" into SI. A bare number is taken as SI.
/// Returns nullopt with `error` filled on failure.
std::optional<double> parse_quantity(std::string_view text, Dimension d, std::string* error);

}  // namespace levinoise::cli
