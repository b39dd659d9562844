#include "edeco/quantum/algebra.hpp"

#include <cmath>
#include <vector>

#include "edeco/error.hpp"

namespace edeco {
namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Splits every full-space index into (index within `sub`, index within the
// complement). `sub` factors may appear in any order relative to `full`.
struct IndexSplit {
  std::vector<Eigen::Index> sub;
  std::vector<Eigen::Index> rest;
  Eigen::Index rest_dim = 1;
};

IndexSplit split_indices(const HilbertSpace& full, const HilbertSpace& sub) {
  const auto& ff = full.factors();
  std::vector<int> sub_pos(ff.size(), -1);
  for (std::size_t k = 0; k < sub.factors().size(); ++k) {
    const auto& sf = sub.factors()[k];
    auto idx = full.index_of(sf.label);
    if (!idx) throw Error(ErrorKind::unknown_label, "unknown factor label '" + sf.label + "'");
    if (ff[*idx].dim != sf.dim) {
      throw Error(ErrorKind::dimension_mismatch, "factor '" + sf.label + "' dimension differs");
    }
    sub_pos[*idx] = static_cast<int>(k);
  }

  // Strides of each full factor inside the sub-space and the complement.
  const auto& sfs = sub.factors();
  std::vector<Eigen::Index> sub_stride(sfs.size(), 1);
  for (std::size_t k = sfs.size(); k-- > 1;) {
    sub_stride[k - 1] = sub_stride[k] * static_cast<Eigen::Index>(sfs[k].dim);
  }
  std::vector<Eigen::Index> rest_stride(ff.size(), 0);
  IndexSplit split;
  for (std::size_t f = ff.size(); f-- > 0;) {
    if (sub_pos[f] < 0) {
      rest_stride[f] = split.rest_dim;
      split.rest_dim *= static_cast<Eigen::Index>(ff[f].dim);
    }
  }

  const auto n = static_cast<Eigen::Index>(full.total_dim());
  split.sub.resize(n);
  split.rest.resize(n);
  std::vector<std::size_t> digit(ff.size(), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index s = 0;
    Eigen::Index r = 0;
    for (std::size_t f = 0; f < ff.size(); ++f) {
      const auto d = static_cast<Eigen::Index>(digit[f]);
      if (sub_pos[f] >= 0) {
        s += d * sub_stride[sub_pos[f]];
      } else {
        r += d * rest_stride[f];
      }
    }
    split.sub[i] = s;
    split.rest[i] = r;
    // Increment the mixed-radix counter, last factor fastest.
    for (std::size_t f = ff.size(); f-- > 0;) {
      if (++digit[f] < ff[f].dim) break;
      digit[f] = 0;
    }
  }
  return split;
}

}  // namespace

Operator tensor(const Operator& a, const Operator& b) {
  return Operator(a.space().concat(b.space()), kron(a.matrix(), b.matrix()));
}

PureState tensor(const PureState& a, const PureState& b) {
  Vector out(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    out.segment(i * b.dim(), b.dim()) = a.amplitudes()(i) * b.amplitudes();
  }
  return PureState(a.space().concat(b.space()), std::move(out));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(a.space().concat(b.space()), kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<std::string>& keep) {
  const HilbertSpace kept = rho.space().subspace(keep);
  const IndexSplit split = split_indices(rho.space(), kept);

  // Group full indices by their traced-out component.
  std::vector<std::vector<Eigen::Index>> by_rest(static_cast<std::size_t>(split.rest_dim));
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    by_rest[static_cast<std::size_t>(split.rest[i])].push_back(i);
  }

  const auto kd = static_cast<Eigen::Index>(kept.total_dim());
  Matrix out = Matrix::Zero(kd, kd);
  const Matrix& m = rho.matrix();
  for (const auto& group : by_rest) {
    for (Eigen::Index j : group) {
      for (Eigen::Index i : group) {
        out(split.sub[i], split.sub[j]) += m(i, j);
      }
    }
  }
  return DensityMatrix(kept, std::move(out));
}

Operator embed(const Operator& local, const HilbertSpace& full) {
  const IndexSplit split = split_indices(full, local.space());
  std::vector<std::vector<Eigen::Index>> by_rest(static_cast<std::size_t>(split.rest_dim));
  const auto n = static_cast<Eigen::Index>(full.total_dim());
  for (Eigen::Index i = 0; i < n; ++i) {
    by_rest[static_cast<std::size_t>(split.rest[i])].push_back(i);
  }
  Matrix out = Matrix::Zero(n, n);
  const Matrix& m = local.matrix();
  for (const auto& group : by_rest) {
    for (Eigen::Index j : group) {
      for (Eigen::Index i : group) {
        out(i, j) = m(split.sub[i], split.sub[j]);
      }
    }
  }
  return Operator(full, std::move(out));
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

EigenSystem eig_h(const Operator& op) {
  if (!op.is_hermitian()) {
    throw Error(ErrorKind::not_hermitian, "eig_h requires a Hermitian operator");
  }
  // Symmetrize so round-off in the input cannot leak into the solver.
  Matrix herm = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical, "Hermitian eigensolver did not converge");
  }
  return EigenSystem{solver.eigenvalues(), Operator(op.space(), solver.eigenvectors())};
}

Operator expm_hermitian(const Operator& h, Complex scale) {
  const EigenSystem es = eig_h(h);
  Vector phases(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) phases(k) = std::exp(scale * es.values(k));
  const Matrix& u = es.vectors.matrix();
  return Operator(h.space(), u * phases.asDiagonal() * u.adjoint());
}

PureState apply(const Operator& op, const PureState& psi) {
  if (!(op.space() == psi.space())) {
    throw Error(ErrorKind::dimension_mismatch, "operator and state live on different spaces");
  }
  return PureState(psi.space(), op.matrix() * psi.amplitudes());
}

DensityMatrix conjugate(const Operator& u, const DensityMatrix& rho) {
  if (!(u.space() == rho.space())) {
    throw Error(ErrorKind::dimension_mismatch, "operator and state live on different spaces");
  }
  return DensityMatrix(rho.space(), u.matrix() * rho.matrix() * u.matrix().adjoint());
}

double coherence_weight(const DensityMatrix& rho, const Operator& basis) {
  if (basis.dim() != rho.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "basis and state dimensions differ");
  }
  const Matrix& b = basis.matrix();
  const Matrix in_basis = b.adjoint() * rho.matrix() * b;
  double total = 0.0;
  for (Eigen::Index j = 0; j < in_basis.cols(); ++j) {
    for (Eigen::Index i = 0; i < in_basis.rows(); ++i) {
      if (i != j) total += std::abs(in_basis(i, j));
    }
  }
  return total;
}

}  // namespace edeco
