#pragma once

#include <set>
#include <string>
#include <vector>

#include "edeco/quantum/types.hpp"

namespace edeco {

/// One jointly-decohering group of factors. `hamiltonian` is the block's free
/// Hamiltonian (J) already embedded on the full space.
struct DecoherenceBlock {
  std::set<std::string> labels;
  Operator hamiltonian;

  /// Embeds a Hamiltonian defined on a sub-space of `full`; the block labels
  /// are that sub-space's factors.
  static DecoherenceBlock local(const Operator& local_hamiltonian, const HilbertSpace& full);
};

/// Double-commutator energy decoherence: sigma (s) plus the partition into
/// blocks. A single block over every label with the total Hamiltonian is
/// global decoherence; several disjoint blocks are local decoherence.
struct DecoherenceSpec {
  double sigma = 0.0;
  std::vector<DecoherenceBlock> blocks;

  static DecoherenceSpec none() { return {}; }
  static DecoherenceSpec global(double sigma, const Operator& total_hamiltonian);

  /// Throws on overlapping labels, non-Hermitian blocks, blocks that act
  /// outside their labels, or sigma < 0.
  void validate(const HilbertSpace& space) const;
};

enum class LossKind { amplitude_damping };

struct LossChannel {
  LossKind kind = LossKind::amplitude_damping;
  double rate = 0.0;  // 1/s
  Operator lowering;
};

enum class Method { analytic, stepped };

struct EvolutionSpec {
  Operator hamiltonian;  // drives -(i/hbar)[H, rho], in J
  DecoherenceSpec decoherence;
  std::vector<LossChannel> losses;
  double duration = 0.0;  // s
  Method method = Method::analytic;
  double step = 0.0;  // s, stepped only

  void validate(const HilbertSpace& space) const;
};

/// d(rho)/dt = -(i/hbar)[H, rho] - sum_b (sigma/hbar^2)[H_b, [H_b, rho]]
///             + sum_l rate (L rho L^dagger - {L^dagger L, rho}/2)
Matrix generator(const Matrix& rho, const EvolutionSpec& spec);
Matrix generator(const DensityMatrix& rho, const EvolutionSpec& spec);

/// Exact propagation in the joint eigenbasis of the drive and block
/// Hamiltonians. Requires mutually commuting Hamiltonians and no losses.
DensityMatrix evolve_analytic(const DensityMatrix& rho0, const EvolutionSpec& spec);

/// Classical fixed-step RK4 on the generator, then re-Hermitized and
/// trace-renormalized.
DensityMatrix evolve_stepped(const DensityMatrix& rho0, const EvolutionSpec& spec);

/// Exact solution of the amplitude-damping dissipator alone over `duration`.
/// Requires L^dagger L to be a projector P with L P = L and L^2 = 0 (a
/// two-level lowering operator, possibly embedded). The map commutes with
/// evolve_analytic whenever every Hamiltonian is diagonal in a product basis
/// containing L's range, so the two may be composed.
DensityMatrix apply_loss_channel(const DensityMatrix& rho, const LossChannel& loss, double duration);

/// Dispatches on spec.method.
DensityMatrix evolve(const DensityMatrix& rho0, const EvolutionSpec& spec);

/// Upper bound on the generator's superoperator norm (1/s), used for the
/// RK4 step-size precondition ||L|| * step <= kMaxStepNorm.
double generator_norm_bound(const EvolutionSpec& spec);
inline constexpr double kMaxStepNorm = 0.1;

/// exp(-i H t / hbar)
Operator unitary_propagator(const Operator& hamiltonian, double duration);

/// sigma (Delta E / hbar)^2 with Delta E in eV; result in 1/s.
double decoherence_rate(double delta_e_ev, double sigma);

}  // namespace edeco
