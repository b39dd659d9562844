#pragma once

#include <optional>

namespace edeco {

struct MatterwaveBound {
  double rate = 0.0;  // 1/s, sigma (m c^2 / hbar)^2
  /// velocity / rate; empty means unbounded (sigma = 0).
  std::optional<double> decoherence_length;
  /// Local decoherence on the path-separation scale would destroy the
  /// fringes before the atoms cross the apparatus.
  bool excluded = false;
};

/// mass (kg), velocity (m/s), path_separation (m), sigma (s), flight_length
/// (m, distance over which the interferometer shows coherence).
MatterwaveBound matterwave_bound(double mass, double velocity, double path_separation,
                                 double sigma, double flight_length);

struct DistanceReach {
  std::optional<double> l_decoherence;  // c gamma / Gamma^2 when gamma, Gamma > 0
  double l_laser = 0.0;                 // c * coherence time
  double l_max = 0.0;
};

DistanceReach distance_reach(double gamma, double gamma_sp, double coherence_time);

/// Energy gap (eV) whose coherence decays by one e-fold over `age` seconds:
/// hbar / sqrt(sigma age).
double cosmic_bound(double sigma, double age);

}  // namespace edeco
