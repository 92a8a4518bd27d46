#include "levinoise/paul_trap.hpp"

namespace levinoise {

void validate(const TrapSpec& t) {
  if (!(t.secular_frequency > 0.0)) throw DomainError("TrapSpec", "f0 must be > 0");
  if (!(t.electrode_distance > 0.0)) throw DomainError("TrapSpec", "d must be > 0");
  if (!(t.bias_voltage_noise >= 0.0)) throw DomainError("TrapSpec", "S_v must be >= 0");
  if (!(t.damping >= 0.0)) throw DomainError("TrapSpec", "damping must be >= 0");
}

double bias_noise_force_psd(const TrapSpec& trap, double q) {
  validate(trap);
  if (!(q >= 0.0)) throw DomainError("bias_noise_force_psd", "charge must be >= 0");
  const double amp = trap.bias_voltage_noise * q / trap.electrode_distance;
  return amp * amp;
}

double transduction_factor(const TrapSpec& trap, double q) {
  validate(trap);
  if (!(q >= 0.0)) throw DomainError("transduction_factor", "charge must be >= 0");
  return q / trap.electrode_distance;
}

}  // namespace levinoise
