#include "edeco/decoherence/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "edeco/constants.hpp"
#include "edeco/error.hpp"
#include "edeco/quantum/algebra.hpp"

namespace edeco {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kCommuteTol = 1e-9;
constexpr double kJointDiagTol = 1e-8;
constexpr double kDiagonalTol = 1e-14;
constexpr double kBlockLocalityTol = 1e-10;

// Induced 1-norm of H - (tr H / d) 1, an upper bound on the spectral spread
// that enters ||[H, X]|| <= 2 ||H - c|| ||X||.
double centered_norm(const Matrix& h) {
  const auto n = h.rows();
  if (n == 0) return 0.0;
  const Complex shift = h.trace() / static_cast<double>(n);
  double best = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double col = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) col += std::abs(h(i, j) - (i == j ? shift : 0.0));
    best = std::max(best, col);
  }
  return best;
}

double induced_norm(const Matrix& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) best = std::max(best, m.col(j).cwiseAbs().sum());
  return best;
}

bool nearly_diagonal(const Matrix& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && std::abs(m(i, j)) > kDiagonalTol * scale) return false;
    }
  }
  return true;
}

void require_space(const HilbertSpace& expected, const HilbertSpace& got, const char* what) {
  if (!(expected == got)) {
    throw Error(ErrorKind::dimension_mismatch, std::string(what) + " lives on " + describe(got) +
                                                   ", expected " + describe(expected));
  }
}

// Joint eigenbasis of mutually commuting Hermitian matrices. energies[k] holds
// the diagonal of U^dagger H_k U.
struct JointBasis {
  bool identity = true;
  Matrix u;
  std::vector<RealVector> energies;
};

JointBasis joint_eigenbasis(const std::vector<const Matrix*>& ops) {
  JointBasis basis;
  const bool all_diagonal =
      std::all_of(ops.begin(), ops.end(), [](const Matrix* m) { return nearly_diagonal(*m); });
  if (all_diagonal) {
    for (const Matrix* m : ops) basis.energies.emplace_back(m->diagonal().real());
    return basis;
  }

  // A generic real combination of commuting Hermitian matrices has the joint
  // eigenvectors as its own; the weights only need to avoid accidental ties.
  const auto n = ops.front()->rows();
  Matrix mix = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const double norm = ops[k]->norm();
    if (norm == 0.0) continue;
    const double weight = 1.0 + 0.7548776662466927 * static_cast<double>(k) +
                          0.5698402909980532 * static_cast<double>(k * k);
    mix += (weight / norm) * (*ops[k]);
  }
  mix = 0.5 * (mix + mix.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(mix);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical, "joint eigenbasis: eigensolver did not converge");
  }
  basis.identity = false;
  basis.u = solver.eigenvectors();
  for (const Matrix* m : ops) {
    Matrix d = basis.u.adjoint() * (*m) * basis.u;
    Matrix off = d;
    off.diagonal().setZero();
    if (off.norm() > kJointDiagTol * std::max(m->norm(), 1e-300)) {
      throw Error(ErrorKind::numerical,
                  "joint eigenbasis failed: Hamiltonians are not simultaneously diagonalized");
    }
    basis.energies.emplace_back(d.diagonal().real());
  }
  return basis;
}

// Generator specialised for the Hermitian iterates of the RK4 loop. Diagonal
// Hamiltonians act elementwise; dense ones use H rho, (H rho) H and H^2 rho,
// with the remaining products recovered as adjoints.
// Writes the generator as G rho + (G rho)^dagger + sum_k A_k rho A_k^dagger with
// G = -iH/hbar - (sigma/hbar^2) sum_b H_b^2 - (1/2) sum_l gamma_l L^dagger L, so every
// dense term costs one product for G and two per sandwich. Diagonal pieces are
// applied elementwise.
class HermitianGenerator {
 public:
  explicit HermitianGenerator(const EvolutionSpec& spec) {
    const double hbar = constants::hbar;
    Matrix g = Complex(0.0, -1.0 / hbar) * spec.hamiltonian.matrix();
    const double kappa = spec.decoherence.sigma / (hbar * hbar);
    if (kappa != 0.0) {
      for (const auto& block : spec.decoherence.blocks) {
        const Matrix h = std::sqrt(kappa) * block.hamiltonian.matrix();
        if (h.cwiseAbs().maxCoeff() == 0.0) continue;
        g -= h * h;
        add_sandwich(h, 2.0, true);
      }
    }
    for (const auto& loss : spec.losses) {
      if (loss.rate == 0.0) continue;
      const Matrix l = std::sqrt(loss.rate) * loss.lowering.matrix();
      g -= 0.5 * (l.adjoint() * l);
      add_sandwich(l, 1.0, false);
    }
    diagonal_g_ = nearly_diagonal(g);
    if (diagonal_g_) {
      g_diag_ = g.diagonal();
    } else {
      g_ = std::move(g);
    }
  }

  void operator()(const Matrix& rho, Matrix& out) {
    const auto n = rho.rows();
    if (diagonal_g_) {
      out.resize(n, n);
      for (Eigen::Index j = 0; j < n; ++j) {
        const Complex gj = std::conj(g_diag_(j));
        for (Eigen::Index i = 0; i < n; ++i) out(i, j) = (g_diag_(i) + gj) * rho(i, j);
      }
    } else {
      out.noalias() = g_ * rho;
      out += out.adjoint().eval();
    }
    for (const Sandwich& s : sandwiches_) {
      if (s.diagonal) {
        for (Eigen::Index j = 0; j < n; ++j) {
          const double lj = s.weight * s.levels(j);
          for (Eigen::Index i = 0; i < n; ++i) out(i, j) += s.levels(i) * lj * rho(i, j);
        }
        continue;
      }
      x_.noalias() = s.a * rho;
      if (s.hermitian) {
        out.noalias() += s.weight * (x_ * s.a);
      } else {
        out.noalias() += x_ * s.a.adjoint();
      }
    }
  }

 private:
  struct Sandwich {
    double weight;
    bool hermitian;
    bool diagonal;
    RealVector levels;
    Matrix a;
  };

  void add_sandwich(const Matrix& a, double weight, bool hermitian) {
    Sandwich s{weight, hermitian, hermitian && nearly_diagonal(a), {}, {}};
    if (s.diagonal) {
      s.levels = a.diagonal().real();
    } else {
      s.a = a;
    }
    sandwiches_.push_back(std::move(s));
  }

  bool diagonal_g_ = false;
  Vector g_diag_;
  Matrix g_;
  std::vector<Sandwich> sandwiches_;
  Matrix x_;
};

}  // namespace

DecoherenceBlock DecoherenceBlock::local(const Operator& local_hamiltonian,
                                         const HilbertSpace& full) {
  return DecoherenceBlock{local_hamiltonian.space().labels(), embed(local_hamiltonian, full)};
}

DecoherenceSpec DecoherenceSpec::global(double sigma, const Operator& total_hamiltonian) {
  return DecoherenceSpec{sigma, {DecoherenceBlock{total_hamiltonian.space().labels(),
                                                  total_hamiltonian}}};
}

void DecoherenceSpec::validate(const HilbertSpace& space) const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::invalid_argument, "sigma must be finite and >= 0");
  }
  std::set<std::string> used;
  for (const auto& block : blocks) {
    if (block.labels.empty()) {
      throw Error(ErrorKind::invalid_argument, "decoherence block without labels");
    }
    for (const auto& label : block.labels) {
      if (!space.contains(label)) {
        throw Error(ErrorKind::unknown_label, "decoherence block uses unknown label '" + label + "'");
      }
      if (!used.insert(label).second) {
        throw Error(ErrorKind::invalid_argument,
                    "label '" + label + "' appears in more than one decoherence block");
      }
    }
    require_space(space, block.hamiltonian.space(), "block Hamiltonian");
    if (!block.hamiltonian.is_hermitian()) {
      throw Error(ErrorKind::not_hermitian, "block Hamiltonian is not Hermitian");
    }
    // Acting as identity outside the labels means H equals the embedding of
    // its own normalized partial trace.
    if (block.labels.size() < space.num_factors()) {
      const HilbertSpace sub = space.subspace(block.labels);
      const double rest = static_cast<double>(space.total_dim() / sub.total_dim());
      const DensityMatrix as_matrix(space, block.hamiltonian.matrix());
      const DensityMatrix reduced = partial_trace(as_matrix, block.labels);
      const Operator local(sub, reduced.matrix() / rest);
      const Matrix rebuilt = embed(local, space).matrix();
      const double scale = std::max(block.hamiltonian.matrix().norm(), 1e-300);
      if ((rebuilt - block.hamiltonian.matrix()).norm() > kBlockLocalityTol * scale) {
        throw Error(ErrorKind::invalid_argument,
                    "block Hamiltonian acts outside its labels");
      }
    }
  }
}

void EvolutionSpec::validate(const HilbertSpace& space) const {
  require_space(space, hamiltonian.space(), "drive Hamiltonian");
  if (!hamiltonian.is_hermitian()) {
    throw Error(ErrorKind::not_hermitian, "drive Hamiltonian is not Hermitian");
  }
  decoherence.validate(space);
  for (const auto& loss : losses) {
    if (!(loss.rate >= 0.0) || !std::isfinite(loss.rate)) {
      throw Error(ErrorKind::invalid_argument, "loss rate must be finite and >= 0");
    }
    require_space(space, loss.lowering.space(), "loss lowering operator");
  }
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw Error(ErrorKind::invalid_argument, "duration must be finite and >= 0");
  }
  if (method == Method::stepped && !(step > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "stepped evolution needs step > 0");
  }
}

Matrix generator(const Matrix& rho, const EvolutionSpec& spec) {
  const double hbar = constants::hbar;
  const Matrix& h = spec.hamiltonian.matrix();
  Matrix out = (-kI / hbar) * commutator(h, rho);
  const double kappa = spec.decoherence.sigma / (hbar * hbar);
  if (kappa != 0.0) {
    for (const auto& block : spec.decoherence.blocks) {
      const Matrix& hb = block.hamiltonian.matrix();
      out -= kappa * commutator(hb, commutator(hb, rho));
    }
  }
  for (const auto& loss : spec.losses) {
    if (loss.rate == 0.0) continue;
    const Matrix& l = loss.lowering.matrix();
    const Matrix ldl = l.adjoint() * l;
    out += loss.rate * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

Matrix generator(const DensityMatrix& rho, const EvolutionSpec& spec) {
  require_space(rho.space(), spec.hamiltonian.space(), "drive Hamiltonian");
  return generator(rho.matrix(), spec);
}

DensityMatrix evolve_analytic(const DensityMatrix& rho0, const EvolutionSpec& spec) {
  spec.validate(rho0.space());
  for (const auto& loss : spec.losses) {
    if (loss.rate > 0.0) {
      throw Error(ErrorKind::precondition, "analytic evolution does not support loss channels");
    }
  }

  std::vector<const Matrix*> ops{&spec.hamiltonian.matrix()};
  for (const auto& block : spec.decoherence.blocks) ops.push_back(&block.hamiltonian.matrix());

  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      if (nearly_diagonal(*ops[i]) && nearly_diagonal(*ops[j])) continue;
      const double scale = ops[i]->norm() * ops[j]->norm();
      if (commutator(*ops[i], *ops[j]).norm() > kCommuteTol * scale) {
        throw Error(ErrorKind::non_commuting,
                    "analytic evolution requires mutually commuting Hamiltonians");
      }
    }
  }

  const JointBasis basis = joint_eigenbasis(ops);
  Matrix rho = basis.identity ? rho0.matrix() : Matrix(basis.u.adjoint() * rho0.matrix() * basis.u);

  const double t = spec.duration;
  const double hbar = constants::hbar;
  const double sigma = spec.decoherence.sigma;
  const auto n = rho.rows();
  const RealVector& drive = basis.energies.front();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double omega = (drive(i) - drive(j)) / hbar;
      double exponent = 0.0;
      if (sigma != 0.0) {
        for (std::size_t b = 1; b < basis.energies.size(); ++b) {
          const double gap = (basis.energies[b](i) - basis.energies[b](j)) / hbar;
          exponent += gap * gap;
        }
        exponent *= sigma * t;
      }
      const Complex factor = std::exp(Complex(-exponent, -omega * t));
      rho(i, j) *= factor;
      if (i != j) rho(j, i) *= std::conj(factor);
    }
  }

  if (!basis.identity) rho = basis.u * rho * basis.u.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(rho0.space(), std::move(rho));
}

double generator_norm_bound(const EvolutionSpec& spec) {
  const double hbar = constants::hbar;
  double bound = 2.0 * centered_norm(spec.hamiltonian.matrix()) / hbar;
  for (const auto& block : spec.decoherence.blocks) {
    const double s = centered_norm(block.hamiltonian.matrix()) / hbar;
    bound += 4.0 * spec.decoherence.sigma * s * s;
  }
  for (const auto& loss : spec.losses) {
    const double l = induced_norm(loss.lowering.matrix());
    bound += 2.0 * loss.rate * l * l;
  }
  return bound;
}

DensityMatrix evolve_stepped(const DensityMatrix& rho0, const EvolutionSpec& spec) {
  spec.validate(rho0.space());
  if (spec.duration == 0.0) return rho0;
  if (spec.step > spec.duration) {
    throw Error(ErrorKind::precondition, "step must not exceed the duration");
  }
  const double bound = generator_norm_bound(spec);
  if (bound * spec.step > kMaxStepNorm) {
    std::ostringstream os;
    os << "step " << spec.step << " s too large: ||generator|| * step = " << bound * spec.step
       << " > " << kMaxStepNorm;
    throw Error(ErrorKind::precondition, os.str());
  }

  const auto steps = static_cast<long>(std::ceil(spec.duration / spec.step - 1e-9));
  const double h = spec.duration / static_cast<double>(steps);

  HermitianGenerator rate(spec);
  Matrix rho = rho0.matrix();
  Matrix k1, k2, k3, k4, stage;
  for (long s = 0; s < steps; ++s) {
    rate(rho, k1);
    stage = rho + (0.5 * h) * k1;
    rate(stage, k2);
    stage = rho + (0.5 * h) * k2;
    rate(stage, k3);
    stage = rho + h * k3;
    rate(stage, k4);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw Error(ErrorKind::numerical, "stepped evolution lost all trace");
  rho /= tr;
  DensityMatrix out(rho0.space(), std::move(rho));
  const double lmin = out.min_eigenvalue();
  if (lmin < -kPsdTol) {
    std::ostringstream os;
    os << "stepped evolution left a negative eigenvalue " << lmin;
    throw Error(ErrorKind::numerical, os.str());
  }
  return out;
}

DensityMatrix apply_loss_channel(const DensityMatrix& rho, const LossChannel& loss,
                                 double duration) {
  require_space(rho.space(), loss.lowering.space(), "loss lowering operator");
  if (!(loss.rate >= 0.0) || !(duration >= 0.0)) {
    throw Error(ErrorKind::invalid_argument, "loss rate and duration must be >= 0");
  }
  const Matrix& l = loss.lowering.matrix();
  const Matrix p = l.adjoint() * l;
  const double scale = std::max(p.norm(), 1e-300);
  if ((p * p - p).norm() > 1e-12 * scale || (l * p - l).norm() > 1e-12 * scale ||
      (l * l).norm() > 1e-12 * scale) {
    throw Error(ErrorKind::precondition,
                "exact loss channel needs a two-level lowering operator");
  }
  const double survive = std::exp(-loss.rate * duration);
  const auto n = p.rows();
  const Matrix identity = Matrix::Identity(n, n);
  const Matrix k0 = (identity - p) + std::sqrt(survive) * p;
  const Matrix k1 = std::sqrt(1.0 - survive) * l;
  Matrix out = k0 * rho.matrix() * k0.adjoint() + k1 * rho.matrix() * k1.adjoint();
  return DensityMatrix(rho.space(), std::move(out));
}

DensityMatrix evolve(const DensityMatrix& rho0, const EvolutionSpec& spec) {
  return spec.method == Method::analytic ? evolve_analytic(rho0, spec)
                                         : evolve_stepped(rho0, spec);
}

Operator unitary_propagator(const Operator& hamiltonian, double duration) {
  return expm_hermitian(hamiltonian, Complex(0.0, -duration / constants::hbar));
}

double decoherence_rate(double delta_e_ev, double sigma) {
  const double omega = constants::angular_frequency_ev(delta_e_ev);
  return sigma * omega * omega;
}

}  // namespace edeco
