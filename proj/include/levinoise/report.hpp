#pragma once

#include <string>
#include <vector>

namespace levinoise {

/// One sweep point of a readout scheme.
struct SensitivityReport {
  std::string scheme;     // "cavity", "tweezer", "electrical"
  std::string floor;      // imprecision model used for S_xx
  std::string parameter;  // swept parameter, e.g. "input_power_W"
  double value = 0.0;
  double r_c = 1e-7;
  double lambda_min = 0.0;   // 1/s
  double bandwidth = 0.0;    // Hz
  double s_xx = 0.0;         // m^2/Hz
  double s_ff = 0.0;         // total force PSD at w0, N^2/Hz
  double temperature = 0.0;  // internal particle temperature, K
  std::string dominant;      // largest force channel at w0
  std::vector<std::string> flags;
};

}  // namespace levinoise
