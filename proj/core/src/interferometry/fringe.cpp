#include <algorithm>
#include <cmath>

#include "edeco/constants.hpp"
#include "edeco/error.hpp"
#include "edeco/interferometry/common.hpp"

namespace edeco {

std::string_view to_string(Partition p) noexcept {
  switch (p) {
    case Partition::none: return "none";
    case Partition::global: return "global";
    case Partition::local: return "local";
    case Partition::system: return "system";
    case Partition::reference: return "reference";
  }
  return "none";
}

Partition parse_partition(std::string_view text) {
  if (text == "none") return Partition::none;
  if (text == "global") return Partition::global;
  if (text == "local") return Partition::local;
  if (text == "system" || text == "atom" || text == "arm_c") return Partition::system;
  if (text == "reference" || text == "field" || text == "arm_d") return Partition::reference;
  throw Error(ErrorKind::invalid_argument, "unknown partition '" + std::string(text) + "'");
}

double visibility(std::span<const FringePoint> points) {
  if (points.size() < 2) {
    throw Error(ErrorKind::invalid_argument, "visibility needs at least two fringe points");
  }
  auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                      [](const auto& a, const auto& b) { return a.p_g < b.p_g; });
  const double sum = hi->p_g + lo->p_g;
  if (sum == 0.0) return 0.0;
  return (hi->p_g - lo->p_g) / sum;
}

std::vector<double> uniform_phases(std::size_t count) {
  if (count == 0) throw Error(ErrorKind::invalid_argument, "phase scan must be non-empty");
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = 2.0 * constants::pi * static_cast<double>(k) / static_cast<double>(count);
  }
  return out;
}

}  // namespace edeco
