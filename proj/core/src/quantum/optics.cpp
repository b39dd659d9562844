#include "edeco/quantum/optics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "edeco/constants.hpp"
#include "edeco/error.hpp"
#include "edeco/quantum/algebra.hpp"

namespace edeco {
namespace {

double log_poisson(double mean, std::size_t n) {
  const auto k = static_cast<double>(n);
  return -mean + k * std::log(mean) - std::lgamma(k + 1.0);
}

}  // namespace

std::size_t fock_cutoff(Complex alpha) {
  const double a = std::abs(alpha);
  return static_cast<std::size_t>(std::ceil(a * a + 8.0 * a + 10.0));
}

double poisson_tail(double mean, std::size_t n_max) {
  if (mean <= 0.0) return 0.0;
  // Sum the tail directly; terms beyond the mode decrease monotonically.
  double tail = 0.0;
  for (std::size_t n = n_max + 1;; ++n) {
    const double term = std::exp(log_poisson(mean, n));
    tail += term;
    if (static_cast<double>(n) > mean && term < 1e-300 + 1e-18 * tail) break;
    if (n > n_max + 100000) break;
  }
  return tail;
}

PureState coherent_state(Complex alpha, std::size_t n_max, const std::string& label) {
  const auto dim = static_cast<Eigen::Index>(n_max + 1);
  const double r = std::abs(alpha);
  const double mean = r * r;
  const double deficit = poisson_tail(mean, n_max);
  if (deficit > kCutoffDeficit) {
    throw Error(ErrorKind::cutoff, "n_max = " + std::to_string(n_max) +
                                       " truncates a coherent state with |alpha|^2 = " +
                                       std::to_string(mean) + " (use at least " +
                                       std::to_string(fock_cutoff(alpha)) + ")");
  }
  Vector amps = Vector::Zero(dim);
  if (r == 0.0) {
    amps(0) = 1.0;
  } else {
    const double phase = std::arg(alpha);
    for (Eigen::Index n = 0; n < dim; ++n) {
      const double mag = std::exp(0.5 * log_poisson(mean, static_cast<std::size_t>(n)));
      amps(n) = std::polar(mag, phase * static_cast<double>(n));
    }
  }
  return PureState::normalized(HilbertSpace::single(label, n_max + 1), std::move(amps));
}

PureState fock_state(std::size_t n, std::size_t n_max, const std::string& label) {
  if (n > n_max) {
    throw Error(ErrorKind::cutoff, "Fock state |" + std::to_string(n) + "> exceeds n_max = " +
                                       std::to_string(n_max));
  }
  return PureState::basis(HilbertSpace::single(label, n_max + 1), static_cast<Eigen::Index>(n));
}

ModeOperators mode_ops(std::size_t n_max, const std::string& label) {
  if (n_max < 1) throw Error(ErrorKind::invalid_argument, "mode_ops needs n_max >= 1");
  const auto dim = static_cast<Eigen::Index>(n_max + 1);
  const HilbertSpace space = HilbertSpace::single(label, n_max + 1);
  Matrix a = Matrix::Zero(dim, dim);
  Matrix n = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    n(k, k) = static_cast<double>(k);
    if (k > 0) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  return ModeOperators{Operator(space, std::move(a)), Operator(space, std::move(n))};
}

Operator beamsplitter(std::size_t n_max, const std::string& first, const std::string& second) {
  const HilbertSpace space({{first, n_max + 1}, {second, n_max + 1}});

  // U = exp(theta (a^dagger b - a b^dagger)) sends a^dagger to
  // a^dagger cos(theta) - b^dagger sin(theta); theta = -pi/4 gives
  // a^dagger -> (c^dagger + d^dagger)/sqrt(2). The generator conserves total
  // photon number so it is exponentiated sector by sector, in the sector
  // basis |N - k, k>, k = 0..N (restricted to the truncation).
  const auto dim1 = static_cast<Eigen::Index>(n_max + 1);
  const auto dim = dim1 * dim1;
  const double theta = -0.25 * constants::pi;
  Matrix u = Matrix::Zero(dim, dim);
  for (Eigen::Index total = 0; total <= 2 * (dim1 - 1); ++total) {
    const Eigen::Index k_lo = std::max<Eigen::Index>(0, total - (dim1 - 1));
    const Eigen::Index k_hi = std::min<Eigen::Index>(total, dim1 - 1);
    const Eigen::Index s = k_hi - k_lo + 1;
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(s));
    for (Eigen::Index q = 0; q < s; ++q) {
      const Eigen::Index k = k_lo + q;
      idx[static_cast<std::size_t>(q)] = (total - k) * dim1 + k;
    }
    // H = i (a^dagger b - a b^dagger); a^dagger b |n1, n2> = sqrt((n1 + 1) n2) |n1 + 1, n2 - 1>.
    Matrix block = Matrix::Zero(s, s);
    for (Eigen::Index q = 0; q + 1 < s; ++q) {
      const double n2 = static_cast<double>(k_lo + q + 1);
      const double n1 = static_cast<double>(total - (k_lo + q + 1));
      const Complex amp(0.0, std::sqrt((n1 + 1.0) * n2));
      block(q, q + 1) = amp;  // <n1 + 1, n2 - 1| H |n1, n2>
      block(q + 1, q) = std::conj(amp);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
    Vector phases(s);
    // exp(theta K) = exp(-i theta H)
    for (Eigen::Index q = 0; q < s; ++q) {
      phases(q) = std::exp(Complex(0.0, -theta * solver.eigenvalues()(q)));
    }
    const Matrix ub = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
    for (Eigen::Index c = 0; c < s; ++c) {
      for (Eigen::Index r = 0; r < s; ++r) {
        u(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]) = ub(r, c);
      }
    }
  }
  return Operator(space, std::move(u));
}

HilbertSpace atom_space(const std::string& label) { return HilbertSpace::single(label, 2); }

Operator atom_projector(Eigen::Index level, const std::string& label) {
  Matrix p = Matrix::Zero(2, 2);
  p(level, level) = 1.0;
  return Operator(atom_space(label), std::move(p));
}

Operator atom_lowering(const std::string& label) {
  Matrix l = Matrix::Zero(2, 2);
  l(kGround, kExcited) = 1.0;
  return Operator(atom_space(label), std::move(l));
}

}  // namespace edeco
