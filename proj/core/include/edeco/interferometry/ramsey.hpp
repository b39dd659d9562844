#pragma once

#include <cstddef>
#include <vector>

#include "edeco/constants.hpp"
#include "edeco/interferometry/common.hpp"
#include "edeco/quantum/types.hpp"

namespace edeco {

enum class FieldKind { fock, coherent };

struct FieldState {
  FieldKind kind = FieldKind::fock;
  std::size_t photons = 12;  // Fock N
  Complex alpha{0.0, 0.0};   // coherent amplitude

  static FieldState fock(std::size_t n) { return {FieldKind::fock, n, {}}; }
  static FieldState coherent(Complex a) { return {FieldKind::coherent, 0, a}; }

  /// Photon number the pulse duration is tuned to: N, or round(|alpha|^2).
  std::size_t dominant_photons() const;
};

/// Ramsey sequence parameters. Frequencies are angular (rad/s). The field
/// frequency is omega0 - detuning.
struct RamseyConfig {
  FieldState field = FieldState::fock(12);
  std::size_t n_max = 0;  // 0 selects N (Fock) or the coherent cutoff rule
  double coupling = 1.0e6;                     // g, rad/s
  double pulse_area = 0.5 * constants::pi;     // Bloch rotation angle per pulse
  double detuning = 0.0;                       // rad/s
  double omega0 = constants::angular_frequency_ev(1.0);
  double wait = 1.0;                           // s
  std::vector<double> phases = uniform_phases(64);
  Partition partition = Partition::none;
  double sigma = 0.0;                          // s
  double spontaneous_rate = 0.0;               // Gamma, 1/s

  double field_frequency() const { return omega0 - detuning; }
  std::size_t resolved_n_max() const;
};

/// Classical-field Ramsey on the atom alone: ideal pulse, wait segment through
/// the decoherence engine (H_atom = hbar omega0 |e><e|, rotating at the laser
/// frequency), phase injection, inverse pulse. p_g(phi) = (1 + V cos phi)/2.
/// Accepted partitions: none, system (atom), local.
FringeResult run_ramsey_semiclassical(const RamseyConfig& cfg);

/// Quantized-field Ramsey on atom x field: Jaynes-Cummings pulse, wait with
/// energy decoherence over the configured partition, relative phase phi on
/// |e>, second identical pulse, p_g = tr((|g><g| x 1) rho).
FringeResult run_ramsey_quantized(const RamseyConfig& cfg);

/// Intermediate states of one quantized Ramsey shot at a fixed phase.
struct RamseyStages {
  DensityMatrix after_first_pulse;
  DensityMatrix after_wait;
  DensityMatrix final_state;
};
RamseyStages ramsey_quantized_stages(const RamseyConfig& cfg, double phi);

/// Resonant JC interaction hbar g (|e><g| x a + |g><e| x a^dagger) on
/// atom x field, field truncated at n_max.
Operator jaynes_cummings(std::size_t n_max, double coupling);

/// Split-pulse construction: |N>_1 |0>_2 |g> through a balanced beamsplitter
/// on the two pulses, then a JC interaction of pulse 1 with the atom for a
/// coupling-time product `g_t` (rad). Returns the reduced state on
/// (pulse2, atom). Limited to N <= 6.
DensityMatrix split_pulse_reduced_state(std::size_t photons, double g_t);

}  // namespace edeco
