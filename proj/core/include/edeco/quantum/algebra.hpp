#pragma once

#include <set>
#include <string>

#include "edeco/quantum/types.hpp"

namespace edeco {

Operator tensor(const Operator& a, const Operator& b);
PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on the kept factors (in the original factor order).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<std::string>& keep);

/// Lifts `local` (whose factors are a subset of `full`'s, in any order) to
/// `full`, acting as identity on the remaining factors.
Operator embed(const Operator& local, const HilbertSpace& full);

Matrix commutator(const Matrix& a, const Matrix& b);

struct EigenSystem {
  RealVector values;  // ascending
  Operator vectors;   // columns are eigenvectors
};

/// Hermitian eigendecomposition; throws for non-Hermitian input.
EigenSystem eig_h(const Operator& op);

/// exp(scale * H) for Hermitian H via its eigendecomposition.
Operator expm_hermitian(const Operator& h, Complex scale);

PureState apply(const Operator& op, const PureState& psi);
/// U rho U^dagger.
DensityMatrix conjugate(const Operator& u, const DensityMatrix& rho);

/// Sum of |off-diagonal| entries of B^dagger rho B for a unitary basis B.
double coherence_weight(const DensityMatrix& rho, const Operator& basis);

}  // namespace edeco
