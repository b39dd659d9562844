#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace edeco {

/// Which subsystems decohere jointly during a free-evolution segment.
enum class Partition {
  none,    // no energy decoherence
  global,  // one block: system and phase reference together
  local,   // one block per subsystem
  system,  // only the system under study (atom, or arm c)
  reference,  // only the phase reference (field, or arm d)
};

std::string_view to_string(Partition p) noexcept;
Partition parse_partition(std::string_view text);

struct FringePoint {
  double phi = 0.0;  // rad
  double p_g = 0.0;
};

struct FringeResult {
  std::vector<FringePoint> points;
  double visibility = 0.0;
};

/// (max - min) / (max + min) of p_g over the scan; 0 when max + min = 0.
double visibility(std::span<const FringePoint> points);

/// `count` phases uniformly spaced on [0, 2 pi). An even count makes the
/// sample set symmetric under phi -> phi + pi.
std::vector<double> uniform_phases(std::size_t count);

}  // namespace edeco
