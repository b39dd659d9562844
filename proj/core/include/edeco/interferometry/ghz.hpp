#pragma once

#include <cstddef>
#include <vector>

#include "edeco/constants.hpp"

namespace edeco {

struct GhzConfig {
  std::size_t n_atoms = 1;
  double omega0 = constants::angular_frequency_ev(1.0);  // rad/s
  double sigma = 0.0;            // s
  double gamma_sp = 0.0;         // single-atom spontaneous rate, 1/s
  double three_body_rate = 0.0;  // precomputed k3 N^3 / V^2, 1/s
  double wait = 1.0;             // s

  void validate() const;
};

struct GhzResult {
  double coherence = 0.5;  // |rho_{G,E}|, 0.5 for the ideal GHZ state
  double survival = 1.0;   // probability that no atom was lost
  double effective_rate = 0.0;
};

/// Two-branch model of (|g>^N + |e>^N)/sqrt(2): the branches differ in energy
/// by N hbar omega0, and losing any atom removes the branch coherence.
///   effective_rate = sigma (N omega0)^2 + N Gamma + three_body_rate
GhzResult run_ghz(const GhzConfig& cfg);
GhzResult run_ghz(const GhzConfig& cfg, double time);

struct GhzPoint {
  double t = 0.0;
  GhzResult value;
};
/// `points` equally spaced times on [0, wait].
std::vector<GhzPoint> ghz_curve(const GhzConfig& cfg, std::size_t points);

/// Same coherence from the full 2^N-dimensional decoherence engine with
/// H = sum_i hbar omega0 |e><e|_i decohering as one block; losses are folded
/// in as the no-loss survival factor. Limited to N <= 10.
double ghz_coherence_brute_force(const GhzConfig& cfg);

}  // namespace edeco
