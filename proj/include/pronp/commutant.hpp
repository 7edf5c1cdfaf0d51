// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pronp/matrix_kit.hpp"

namespace pronp {

/// Linearly independent n x n matrices spanning a subspace of R^{n x n}.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;

  SubspaceBasis(Index n, std::vector<Matrix> basis)
      : n_(n), basis_(std::move(basis)) {
    for (const auto& X : basis_) {
      if (X.rows() != n_ || X.cols() != n_) {
        throw Error(ErrorCode::DimensionMismatch, "SubspaceBasis: element shape");
      }
    }
  }

  /// Columns of `stacked` are vec'd basis elements.
  static SubspaceBasis from_columns(Index n, const Matrix& stacked) {
    std::vector<Matrix> mats;
    mats.reserve(static_cast<std::size_t>(stacked.cols()));
    for (Index k = 0; k < stacked.cols(); ++k) {
      mats.push_back(unvec(stacked.col(k), n, n));
    }
    return SubspaceBasis(n, std::move(mats));
  }

  /// As the constructor, but rejects linearly dependent input.
  static SubspaceBasis checked(Index n, std::vector<Matrix> basis,
                               const Tolerances& tol) {
    SubspaceBasis S(n, std::move(basis));
    if (numerical_rank(S.stacked(), tol) != S.dim()) {
      throw Error(ErrorCode::RankMismatch, "SubspaceBasis: dependent elements");
    }
    return S;
  }

  Index n() const { return n_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  const std::vector<Matrix>& basis() const& { return basis_; }
  // By value on temporaries, so `for (auto& X : f().basis())` is safe.
  std::vector<Matrix> basis() && { return std::move(basis_); }
  const Matrix& operator[](std::size_t k) const { return basis_[k]; }

  /// n^2 x dim matrix [vec X_1 ... vec X_dim].
  Matrix stacked() const {
    Matrix S(n_ * n_, dim());
    for (Index k = 0; k < dim(); ++k) S.col(k) = vec(basis_[std::size_t(k)]);
    return S;
  }

 private:
  Index n_ = 0;
  std::vector<Matrix> basis_;
};

/// Orthonormal basis of {X : AX = XA}, the nullspace of I (x) A - A^T (x) I.
inline SubspaceBasis commutant_basis(const Matrix& A, const Tolerances& tol) {
  if (A.rows() != A.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "commutant_basis: A not square");
  }
  const Index n = A.rows();
  const Matrix I = Matrix::Identity(n, n);
  const Matrix G = kron(I, A) - kron(A.transpose(), I);
  // |G|_2 <= 2 |A|_F; for A close to a multiple of I, G is pure rounding
  // noise and must not count against the commutant.
  return SubspaceBasis::from_columns(n, rank_nullspace_pinv(G, tol, 2.0 * A.norm()).nullspace);
}

/// Orthonormal basis of {X : XK = KX for every K in the commutant of A}.
inline SubspaceBasis bicommutant_basis(const Matrix& A, const Tolerances& tol) {
  const SubspaceBasis comm = commutant_basis(A, tol);
  const Index n = A.rows();
  const Index n2 = n * n;
  const Matrix I = Matrix::Identity(n, n);
  Matrix G(n2 * comm.dim(), n2);
  for (Index k = 0; k < comm.dim(); ++k) {
    const Matrix& K = comm[std::size_t(k)];
    G.middleRows(k * n2, n2) = kron(I, K) - kron(K.transpose(), I);
  }
  return SubspaceBasis::from_columns(n, rank_nullspace_pinv(G, tol).nullspace);
}

/// dim {A}'' over R.
inline Index m_max(const Matrix& A, const Tolerances& tol) {
  return bicommutant_basis(A, tol).dim();
}

struct Membership {
  bool member = false;
  Vector coords;          // least-squares coordinates in the given basis
  double residual = 0.0;  // |sum_k coords_k X_k - B|_F
};

/// Least-squares projection of B onto span(S); member iff the residual is at
/// most residual_abs * (1 + |B|_F).
inline Membership membership(const Matrix& B, const SubspaceBasis& S,
                             const Tolerances& tol) {
  if (B.rows() != S.n() || B.cols() != S.n()) {
    throw Error(ErrorCode::DimensionMismatch, "membership: shape mismatch");
  }
  Membership out;
  const Vector b = vec(B);
  if (S.dim() == 0) {
    out.coords = Vector();
    out.residual = b.norm();
  } else {
    const Matrix X = S.stacked();
    out.coords = X.completeOrthogonalDecomposition().solve(b);
    out.residual = (X * out.coords - b).norm();
  }
  out.member = out.residual <= tol.residual_abs * (1.0 + B.norm());
  return out;
}

}  // namespace pronp
