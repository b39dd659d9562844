#include "edeco/interferometry/michelson.hpp"

#include <cmath>

#include <Eigen/SparseCore>

#include "edeco/decoherence/engine.hpp"
#include "edeco/error.hpp"
#include "edeco/quantum/algebra.hpp"
#include "edeco/quantum/optics.hpp"

namespace edeco {

MichelsonResult run_michelson(const MichelsonConfig& cfg) {
  if (!(cfg.arm_time >= 0.0)) throw Error(ErrorKind::invalid_argument, "arm_time must be >= 0");
  if (!(cfg.sigma >= 0.0)) throw Error(ErrorKind::invalid_argument, "sigma must be >= 0");
  const std::size_t n_max = cfg.n_max != 0 ? cfg.n_max : fock_cutoff(cfg.alpha);

  const PureState in_a = coherent_state(cfg.alpha, n_max, "arm_c");
  const PureState in_b = fock_state(0, n_max, "arm_d");
  const PureState psi_in = tensor(in_a, in_b);
  const HilbertSpace& space = psi_in.space();

  const Operator split = beamsplitter(n_max, "arm_c", "arm_d");
  const PureState psi_arms = apply(split, psi_in);

  const double hbar = constants::hbar;
  const Operator n_c = embed(mode_ops(n_max, "arm_c").number, space);
  const Operator n_d = embed(mode_ops(n_max, "arm_d").number, space);
  const Operator h_c = (hbar * cfg.mode_frequency) * n_c;
  const Operator h_d = (hbar * cfg.mode_frequency) * n_d;

  DecoherenceSpec deco{cfg.sigma, {}};
  switch (cfg.partition) {
    case Partition::none: break;
    case Partition::global: deco.blocks.push_back({space.labels(), h_c + h_d}); break;
    case Partition::local:
      deco.blocks.push_back({{"arm_c"}, h_c});
      deco.blocks.push_back({{"arm_d"}, h_d});
      break;
    case Partition::system: deco.blocks.push_back({{"arm_c"}, h_c}); break;
    case Partition::reference: deco.blocks.push_back({{"arm_d"}, h_d}); break;
  }

  const EvolutionSpec arms{Operator::zero(space), std::move(deco), {}, cfg.arm_time,
                           Method::analytic, 0.0};
  DensityMatrix arm_state = evolve_analytic(DensityMatrix::from_pure(psi_arms), arms);

  // A balanced interferometer recombines with the inverse of the splitting map.
  // The splitter is block diagonal in total photon number, so it is applied
  // as a sparse matrix.
  const HilbertSpace out_space({{"out_a", n_max + 1}, {"out_b", n_max + 1}});
  const Eigen::SparseMatrix<Complex> u = split.matrix().sparseView();
  const Matrix right = arm_state.matrix() * u;
  Matrix out = u.adjoint() * right;
  DensityMatrix state_out(out_space, std::move(out));

  const Operator n_a = embed(mode_ops(n_max, "out_a").number, out_space);
  const Operator n_b = embed(mode_ops(n_max, "out_b").number, out_space);
  MichelsonResult result{state_out.expectation(n_a).real(), state_out.expectation(n_b).real(),
                         std::move(state_out), std::move(arm_state)};
  return result;
}

DensityMatrix poisson_mixture(double mean, std::size_t n_max, const std::string& label) {
  RealVector weights = RealVector::Zero(static_cast<Eigen::Index>(n_max + 1));
  if (mean == 0.0) {
    weights(0) = 1.0;
  } else {
    for (std::size_t n = 0; n <= n_max; ++n) {
      const auto k = static_cast<double>(n);
      weights(static_cast<Eigen::Index>(n)) = std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
    }
  }
  return DensityMatrix::diagonal(HilbertSpace::single(label, n_max + 1), weights);
}

double phase_average_check(Complex alpha, std::size_t n_max, std::size_t nodes) {
  if (nodes == 0) nodes = 4 * n_max;
  if (nodes < 4 * n_max || nodes == 0) {
    throw Error(ErrorKind::invalid_argument,
                "phase quadrature needs at least 4 n_max = " + std::to_string(4 * n_max) + " nodes");
  }
  const double r = std::abs(alpha);
  const DensityMatrix mixture = poisson_mixture(r * r, n_max);

  const auto dim = static_cast<Eigen::Index>(n_max + 1);
  Matrix average = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; k < nodes; ++k) {
    const double phi = 2.0 * constants::pi * static_cast<double>(k) / static_cast<double>(nodes);
    const PureState psi = coherent_state(alpha * std::polar(1.0, phi), n_max);
    average += psi.amplitudes() * psi.amplitudes().adjoint();
  }
  average /= static_cast<double>(nodes);
  return frobenius_distance(mixture.matrix(), average);
}

}  // namespace edeco
