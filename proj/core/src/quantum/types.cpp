#include "edeco/quantum/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "edeco/error.hpp"

namespace edeco {
namespace {

void require_square(const HilbertSpace& space, const Matrix& m, const char* what) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  if (m.rows() != m.cols() || m.rows() != n) {
    std::ostringstream os;
    os << what << " is " << m.rows() << "x" << m.cols() << " but space " << describe(space)
       << " has dimension " << n;
    throw Error(ErrorKind::dimension_mismatch, os.str());
  }
}

void require_same_space(const Operator& a, const Operator& b) {
  if (!(a.space() == b.space())) {
    throw Error(ErrorKind::dimension_mismatch,
                "operators live on different spaces " + describe(a.space()) + " and " +
                    describe(b.space()));
  }
}

}  // namespace

Operator::Operator(HilbertSpace space, Matrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  require_square(space_, entries_, "operator");
}

Operator Operator::identity(const HilbertSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  return Operator(space, Matrix::Identity(n, n));
}

Operator Operator::zero(const HilbertSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  return Operator(space, Matrix::Zero(n, n));
}

bool Operator::is_hermitian(double tol) const {
  const double scale = entries_.norm();
  if (scale == 0.0) return true;
  return (entries_ - entries_.adjoint()).norm() <= tol * scale;
}

bool Operator::is_unitary(double tol) const {
  const auto n = entries_.rows();
  const double err = (entries_.adjoint() * entries_ - Matrix::Identity(n, n)).norm();
  return err <= tol * std::sqrt(static_cast<double>(n));
}

bool Operator::is_diagonal(double tol) const {
  const auto n = entries_.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j && std::abs(entries_(i, j)) > tol) return false;
    }
  }
  return true;
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  return Operator(a.space_, a.entries_ + b.entries_);
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  return Operator(a.space_, a.entries_ - b.entries_);
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  return Operator(a.space_, a.entries_ * b.entries_);
}

Operator operator*(Complex s, const Operator& a) { return Operator(a.space_, s * a.entries_); }

PureState::PureState(HilbertSpace space, Vector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != static_cast<Eigen::Index>(space_.total_dim())) {
    throw Error(ErrorKind::dimension_mismatch,
                "state vector length does not match space " + describe(space_));
  }
}

PureState PureState::normalized(HilbertSpace space, Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::invalid_argument, "cannot normalize a zero vector");
  amplitudes /= norm;
  return PureState(std::move(space), std::move(amplitudes));
}

PureState PureState::basis(const HilbertSpace& space, Eigen::Index index) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  if (index < 0 || index >= n) {
    throw Error(ErrorKind::invalid_argument, "basis index out of range");
  }
  Vector v = Vector::Zero(n);
  v(index) = 1.0;
  return PureState(space, std::move(v));
}

std::optional<std::string> PureState::check() const {
  const double err = std::abs(amplitudes_.norm() - 1.0);
  if (err > kNormTol) {
    std::ostringstream os;
    os << "state norm deviates from 1 by " << err;
    return os.str();
  }
  return std::nullopt;
}

void PureState::validate() const {
  if (auto problem = check()) throw Error(ErrorKind::numerical, *problem);
}

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  require_square(space_, entries_, "density matrix");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.space(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::diagonal(const HilbertSpace& space, const RealVector& weights) {
  if (weights.size() != static_cast<Eigen::Index>(space.total_dim())) {
    throw Error(ErrorKind::dimension_mismatch, "weight vector length does not match space");
  }
  if ((weights.array() < 0.0).any()) {
    throw Error(ErrorKind::invalid_argument, "mixture weights must be non-negative");
  }
  return DensityMatrix(space, weights.cast<Complex>().asDiagonal());
}

double DensityMatrix::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).norm();
}

double DensityMatrix::min_eigenvalue() const {
  Matrix herm = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

Complex DensityMatrix::expectation(const Operator& op) const {
  if (!(op.space() == space_)) {
    throw Error(ErrorKind::dimension_mismatch, "operator and state live on different spaces");
  }
  // tr(rho A) without forming the product.
  return (entries_.transpose().cwiseProduct(op.matrix())).sum();
}

std::optional<std::string> DensityMatrix::check() const {
  std::ostringstream os;
  const double herm = hermiticity_error();
  if (herm > kHermTol) {
    os << "density matrix is not Hermitian (||rho - rho^dagger|| = " << herm << ")";
    return os.str();
  }
  const Complex tr = trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    os << "density matrix trace is " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag()
       << "i";
    return os.str();
  }
  const double lmin = min_eigenvalue();
  if (lmin < -kPsdTol) {
    os << "density matrix has negative eigenvalue " << lmin;
    return os.str();
  }
  return std::nullopt;
}

void DensityMatrix::validate() const {
  if (auto problem = check()) throw Error(ErrorKind::numerical, *problem);
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "matrices differ in shape");
  }
  return (a - b).norm();
}

}  // namespace edeco
