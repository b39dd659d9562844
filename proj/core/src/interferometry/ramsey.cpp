#include "edeco/interferometry/ramsey.hpp"

#include <algorithm>
#include <cmath>

#include "edeco/decoherence/engine.hpp"
#include "edeco/error.hpp"
#include "edeco/quantum/algebra.hpp"
#include "edeco/quantum/optics.hpp"

namespace edeco {
namespace {

constexpr double kHbar = constants::hbar;

void validate_common(const RamseyConfig& cfg) {
  if (!(cfg.pulse_area > 0.0) || cfg.pulse_area > constants::pi) {
    throw Error(ErrorKind::invalid_argument, "pulse_area must lie in (0, pi]");
  }
  if (cfg.phases.empty()) throw Error(ErrorKind::invalid_argument, "phase scan is empty");
  if (!(cfg.wait >= 0.0)) throw Error(ErrorKind::invalid_argument, "wait must be >= 0");
  if (!(cfg.sigma >= 0.0)) throw Error(ErrorKind::invalid_argument, "sigma must be >= 0");
  if (!(cfg.spontaneous_rate >= 0.0)) {
    throw Error(ErrorKind::invalid_argument, "spontaneous_rate must be >= 0");
  }
  if (!(cfg.omega0 > 0.0)) throw Error(ErrorKind::invalid_argument, "omega0 must be > 0");
}

// Rotation exp(-i (theta/2) sigma_x) on (|g>, |e>).
Operator pulse_rotation(double theta) {
  Matrix r(2, 2);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  r << c, Complex(0.0, -s), Complex(0.0, -s), c;
  return Operator(atom_space(), std::move(r));
}

Operator phase_injection(const HilbertSpace& space, double phi) {
  Matrix p = Matrix::Identity(2, 2);
  p(kExcited, kExcited) = std::polar(1.0, phi);
  return embed(Operator(atom_space(), std::move(p)), space);
}

DensityMatrix apply_phase(const DensityMatrix& rho, const Vector& diag) {
  Matrix m = rho.matrix();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) *= diag(i) * std::conj(diag(j));
  }
  return DensityMatrix(rho.space(), std::move(m));
}

struct QuantizedSetup {
  HilbertSpace space;
  DensityMatrix initial;
  Operator pulse;
  EvolutionSpec wait;
  std::vector<LossChannel> losses;
};

QuantizedSetup build_quantized(const RamseyConfig& cfg) {
  validate_common(cfg);
  const std::size_t n_max = cfg.resolved_n_max();
  const std::size_t n_dom = cfg.field.dominant_photons();
  if (n_dom == 0) {
    throw Error(ErrorKind::invalid_argument, "quantized Ramsey needs at least one photon");
  }
  if (!(cfg.coupling > 0.0)) throw Error(ErrorKind::invalid_argument, "coupling must be > 0");

  const PureState field = cfg.field.kind == FieldKind::fock
                              ? fock_state(cfg.field.photons, n_max, "field")
                              : coherent_state(cfg.field.alpha, n_max, "field");
  const PureState atom = PureState::basis(atom_space(), kGround);
  const PureState psi0 = tensor(atom, field);
  const HilbertSpace& space = psi0.space();

  // Bloch angle 2 g sqrt(n) t on the |g,n> <-> |e,n-1> pair.
  const double t_pulse = cfg.pulse_area / (2.0 * cfg.coupling * std::sqrt(static_cast<double>(n_dom)));
  const Operator pulse = unitary_propagator(jaynes_cummings(n_max, cfg.coupling), t_pulse);

  // Frame rotating at the field frequency: the drive keeps only the
  // detuning. Decoherence blocks use the lab-frame free Hamiltonians.
  const ModeOperators mode = mode_ops(n_max, "field");
  const Operator atom_h = (kHbar * cfg.omega0) * atom_projector(kExcited);
  const Operator field_h = (kHbar * cfg.field_frequency()) * mode.number;
  const Operator atom_full = embed(atom_h, space);
  const Operator field_full = embed(field_h, space);
  const Operator drive = embed((kHbar * cfg.detuning) * atom_projector(kExcited), space);

  DecoherenceSpec deco{cfg.sigma, {}};
  switch (cfg.partition) {
    case Partition::none: break;
    case Partition::global:
      deco.blocks.push_back({space.labels(), atom_full + field_full});
      break;
    case Partition::local:
      deco.blocks.push_back({{"atom"}, atom_full});
      deco.blocks.push_back({{"field"}, field_full});
      break;
    case Partition::system: deco.blocks.push_back({{"atom"}, atom_full}); break;
    case Partition::reference: deco.blocks.push_back({{"field"}, field_full}); break;
  }

  std::vector<LossChannel> losses;
  if (cfg.spontaneous_rate > 0.0) {
    losses.push_back({LossKind::amplitude_damping, cfg.spontaneous_rate,
                      embed(atom_lowering(), space)});
  }

  EvolutionSpec wait{drive, std::move(deco), {}, cfg.wait, Method::analytic, 0.0};
  return QuantizedSetup{space, DensityMatrix::from_pure(psi0), pulse, std::move(wait),
                        std::move(losses)};
}

DensityMatrix wait_segment(const QuantizedSetup& setup, const DensityMatrix& rho, double wait) {
  DensityMatrix out = evolve_analytic(rho, setup.wait);
  for (const auto& loss : setup.losses) out = apply_loss_channel(out, loss, wait);
  return out;
}

}  // namespace

std::size_t FieldState::dominant_photons() const {
  if (kind == FieldKind::fock) return photons;
  return static_cast<std::size_t>(std::llround(std::norm(alpha)));
}

std::size_t RamseyConfig::resolved_n_max() const {
  if (field.kind == FieldKind::fock) {
    if (n_max != 0 && n_max < field.photons) {
      throw Error(ErrorKind::cutoff, "n_max is below the Fock photon number");
    }
    return std::max<std::size_t>(n_max, std::max<std::size_t>(field.photons, 1));
  }
  return n_max != 0 ? n_max : fock_cutoff(field.alpha);
}

Operator jaynes_cummings(std::size_t n_max, double coupling) {
  const ModeOperators mode = mode_ops(n_max, "field");
  const Operator raise = atom_lowering().adjoint();  // |e><g|
  const Operator coupling_term = tensor(raise, mode.annihilation);
  return (kHbar * coupling) * (coupling_term + coupling_term.adjoint());
}

FringeResult run_ramsey_semiclassical(const RamseyConfig& cfg) {
  validate_common(cfg);
  if (cfg.partition == Partition::global || cfg.partition == Partition::reference) {
    throw Error(ErrorKind::invalid_argument,
                "semiclassical Ramsey has no quantum phase reference; use partition "
                "none, atom or local");
  }
  const HilbertSpace space = atom_space();
  const Operator atom_h = (kHbar * cfg.omega0) * atom_projector(kExcited);

  DecoherenceSpec deco{cfg.sigma, {}};
  if (cfg.partition != Partition::none) deco.blocks.push_back({{"atom"}, atom_h});
  const Operator drive = (kHbar * cfg.detuning) * atom_projector(kExcited);
  const EvolutionSpec wait{drive, std::move(deco), {}, cfg.wait, Method::analytic, 0.0};

  const Operator first = pulse_rotation(cfg.pulse_area);
  const Operator second = pulse_rotation(-cfg.pulse_area);

  DensityMatrix rho = conjugate(first, DensityMatrix::from_pure(PureState::basis(space, kGround)));
  rho = evolve_analytic(rho, wait);
  if (cfg.spontaneous_rate > 0.0) {
    rho = apply_loss_channel(rho, {LossKind::amplitude_damping, cfg.spontaneous_rate, atom_lowering()},
                             cfg.wait);
  }

  FringeResult result;
  result.points.reserve(cfg.phases.size());
  for (double phi : cfg.phases) {
    const DensityMatrix out = conjugate(second, conjugate(phase_injection(space, phi), rho));
    result.points.push_back({phi, out.matrix()(kGround, kGround).real()});
  }
  result.visibility = visibility(result.points);
  return result;
}

FringeResult run_ramsey_quantized(const RamseyConfig& cfg) {
  const QuantizedSetup setup = build_quantized(cfg);
  const DensityMatrix after_pulse = conjugate(setup.pulse, setup.initial);
  const DensityMatrix waited = wait_segment(setup, after_pulse, cfg.wait);

  // p_g = tr(M rho_phi) with M = U^dagger (|g><g| x 1) U, shared by every phase.
  const Matrix& u = setup.pulse.matrix();
  const Matrix ground = embed(atom_projector(kGround), setup.space).matrix();
  const Matrix measure = u.adjoint() * ground * u;
  const Matrix measure_t = measure.transpose();

  FringeResult result;
  result.points.reserve(cfg.phases.size());
  for (double phi : cfg.phases) {
    const Vector diag = phase_injection(setup.space, phi).matrix().diagonal();
    const DensityMatrix rho_phi = apply_phase(waited, diag);
    const double p_g = (measure_t.cwiseProduct(rho_phi.matrix())).sum().real();
    result.points.push_back({phi, std::clamp(p_g, 0.0, 1.0)});
  }
  result.visibility = visibility(result.points);
  return result;
}

RamseyStages ramsey_quantized_stages(const RamseyConfig& cfg, double phi) {
  const QuantizedSetup setup = build_quantized(cfg);
  DensityMatrix after_pulse = conjugate(setup.pulse, setup.initial);
  DensityMatrix waited = wait_segment(setup, after_pulse, cfg.wait);
  DensityMatrix final_state =
      conjugate(setup.pulse, conjugate(phase_injection(setup.space, phi), waited));
  return RamseyStages{std::move(after_pulse), std::move(waited), std::move(final_state)};
}

DensityMatrix split_pulse_reduced_state(std::size_t photons, double g_t) {
  if (photons == 0 || photons > 6) {
    throw Error(ErrorKind::invalid_argument, "split-pulse construction supports 1 <= N <= 6");
  }
  const std::size_t n_max = photons;
  const PureState p1 = fock_state(photons, n_max, "pulse1");
  const PureState p2 = fock_state(0, n_max, "pulse2");
  const PureState atom = PureState::basis(atom_space(), kGround);
  const PureState psi0 = tensor(tensor(p1, p2), atom);
  const HilbertSpace& space = psi0.space();

  const Operator split = embed(beamsplitter(n_max, "pulse1", "pulse2"), space);

  // JC between pulse 1 and the atom, with hbar g t folded into one angle.
  const ModeOperators mode = mode_ops(n_max, "pulse1");
  const Operator raise = atom_lowering().adjoint();
  const Operator coupling_term = tensor(mode.annihilation, raise);
  const Operator interaction = embed(coupling_term + coupling_term.adjoint(), space);
  const Operator pulse = expm_hermitian(interaction, Complex(0.0, -g_t));

  const PureState psi = apply(pulse, apply(split, psi0));
  return partial_trace(DensityMatrix::from_pure(psi), {"pulse2", "atom"});
}

}  // namespace edeco
