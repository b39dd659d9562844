#include "edeco/interferometry/ghz.hpp"

#include <cmath>
#include <string>

#include "edeco/decoherence/engine.hpp"
#include "edeco/error.hpp"
#include "edeco/quantum/algebra.hpp"
#include "edeco/quantum/optics.hpp"

namespace edeco {

void GhzConfig::validate() const {
  if (n_atoms < 1) throw Error(ErrorKind::invalid_argument, "GHZ needs at least one atom");
  if (!(omega0 >= 0.0) || !(sigma >= 0.0) || !(gamma_sp >= 0.0) || !(three_body_rate >= 0.0) ||
      !(wait >= 0.0)) {
    throw Error(ErrorKind::invalid_argument, "GHZ rates, frequency and wait must be >= 0");
  }
}

GhzResult run_ghz(const GhzConfig& cfg, double time) {
  cfg.validate();
  const auto n = static_cast<double>(cfg.n_atoms);
  const double gap = n * cfg.omega0;
  const double loss_rate = n * cfg.gamma_sp + cfg.three_body_rate;
  const double rate = cfg.sigma * gap * gap + loss_rate;
  return GhzResult{0.5 * std::exp(-rate * time), std::exp(-loss_rate * time), rate};
}

GhzResult run_ghz(const GhzConfig& cfg) { return run_ghz(cfg, cfg.wait); }

std::vector<GhzPoint> ghz_curve(const GhzConfig& cfg, std::size_t points) {
  if (points < 2) throw Error(ErrorKind::invalid_argument, "GHZ curve needs at least two points");
  std::vector<GhzPoint> out;
  out.reserve(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double t = cfg.wait * static_cast<double>(k) / static_cast<double>(points - 1);
    out.push_back({t, run_ghz(cfg, t)});
  }
  return out;
}

double ghz_coherence_brute_force(const GhzConfig& cfg) {
  cfg.validate();
  if (cfg.n_atoms > 10) {
    throw Error(ErrorKind::invalid_argument, "brute-force GHZ is limited to N <= 10");
  }
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < cfg.n_atoms; ++i) factors.push_back({"atom" + std::to_string(i), 2});
  const HilbertSpace space(factors);

  Operator h = Operator::zero(space);
  for (const auto& f : factors) {
    h = h + embed((constants::hbar * cfg.omega0) * atom_projector(kExcited, f.label), space);
  }

  const auto dim = static_cast<Eigen::Index>(space.total_dim());
  Vector psi = Vector::Zero(dim);
  psi(0) = 1.0;
  psi(dim - 1) = 1.0;
  const DensityMatrix rho0 = DensityMatrix::from_pure(PureState::normalized(space, psi));

  const EvolutionSpec spec{h, DecoherenceSpec::global(cfg.sigma, h), {}, cfg.wait,
                           Method::analytic, 0.0};
  const DensityMatrix rho = evolve_analytic(rho0, spec);
  const double survival =
      std::exp(-(static_cast<double>(cfg.n_atoms) * cfg.gamma_sp + cfg.three_body_rate) * cfg.wait);
  return std::abs(rho.matrix()(0, dim - 1)) * survival;
}

}  // namespace edeco
