#pragma once

#include <cstddef>

#include "edeco/constants.hpp"
#include "edeco/interferometry/common.hpp"
#include "edeco/quantum/types.hpp"

namespace edeco {

struct MichelsonConfig {
  Complex alpha{2.0, 0.0};
  std::size_t n_max = 0;  // 0 selects the cutoff rule for |alpha|
  double arm_time = 1.0;  // s
  double mode_frequency = constants::angular_frequency_ev(1.0);  // rad/s
  Partition partition = Partition::none;  // over {arm_c, arm_d}
  double sigma = 0.0;
};

struct MichelsonResult {
  double mean_photons_out_a = 0.0;
  double mean_photons_out_b = 0.0;
  DensityMatrix state_out;  // on (out_a, out_b)
  DensityMatrix arm_state;  // on (arm_c, arm_d), before recombination
};

/// |alpha>_a |0>_b -> beamsplitter -> per-arm evolution with energy
/// decoherence over the configured partition -> inverse beamsplitter.
/// Both arms share the mode frequency, so the arm segment is evolved in the
/// frame rotating at that frequency.
MichelsonResult run_michelson(const MichelsonConfig& cfg);

/// Frobenius distance between the Poissonian Fock mixture and a `nodes`-point
/// uniform quadrature of the phase-averaged coherent state. Requires
/// nodes >= 4 n_max; nodes = 0 selects exactly 4 n_max.
double phase_average_check(Complex alpha, std::size_t n_max, std::size_t nodes = 0);

/// Poissonian mixture with the given mean on a single mode truncated at n_max.
DensityMatrix poisson_mixture(double mean, std::size_t n_max, const std::string& label = "mode");

}  // namespace edeco
