#pragma once

#include <complex>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "edeco/quantum/space.hpp"

namespace edeco {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Validation tolerances. Checks are explicit calls; constructors only enforce
// shape so integrators may carry transiently unphysical intermediates.
inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kEigTol = 1e-9;
inline constexpr double kOperatorTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// Square matrix on a HilbertSpace (Hamiltonians, mode operators, unitaries).
class Operator {
 public:
  Operator(HilbertSpace space, Matrix entries);

  static Operator identity(const HilbertSpace& space);
  static Operator zero(const HilbertSpace& space);

  const HilbertSpace& space() const noexcept { return space_; }
  const Matrix& matrix() const noexcept { return entries_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }

  /// Relative Frobenius test ||A - A^dagger|| <= tol * ||A||.
  bool is_hermitian(double tol = kOperatorTol) const;
  /// Relative Frobenius test ||U^dagger U - 1|| <= tol * sqrt(dim).
  bool is_unitary(double tol = kOperatorTol) const;
  bool is_diagonal(double tol = 0.0) const;

  Operator adjoint() const { return Operator(space_, entries_.adjoint()); }

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);
  friend Operator operator*(double s, const Operator& a) { return Complex(s, 0.0) * a; }

 private:
  HilbertSpace space_;
  Matrix entries_;
};

class PureState {
 public:
  PureState(HilbertSpace space, Vector amplitudes);

  /// Rescales `amplitudes` to unit 2-norm; throws for the zero vector.
  static PureState normalized(HilbertSpace space, Vector amplitudes);
  static PureState basis(const HilbertSpace& space, Eigen::Index index);

  const HilbertSpace& space() const noexcept { return space_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Eigen::Index dim() const noexcept { return amplitudes_.size(); }

  std::optional<std::string> check() const;
  void validate() const;

 private:
  HilbertSpace space_;
  Vector amplitudes_;
};

class DensityMatrix {
 public:
  DensityMatrix(HilbertSpace space, Matrix entries);

  static DensityMatrix from_pure(const PureState& psi);
  /// Diagonal mixture in the product basis; weights must be non-negative.
  static DensityMatrix diagonal(const HilbertSpace& space, const RealVector& weights);

  const HilbertSpace& space() const noexcept { return space_; }
  const Matrix& matrix() const noexcept { return entries_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }

  Complex trace() const { return entries_.trace(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;
  double purity() const;
  Complex expectation(const Operator& op) const;

  /// Describes the first violated invariant (Hermiticity, trace, positivity).
  std::optional<std::string> check() const;
  void validate() const;

 private:
  HilbertSpace space_;
  Matrix entries_;
};

double frobenius_distance(const Matrix& a, const Matrix& b);

}  // namespace edeco
