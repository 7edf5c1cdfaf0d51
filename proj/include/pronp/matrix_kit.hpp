// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file matrix_kit.hpp
///
/// Dense real linear-algebra substrate: column-stacking vectorization,
/// Kronecker products, SVD-based rank/nullspace/pseudoinverse with one
/// relative cutoff, symmetric factorizations and spectra.
///

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "pronp/errors.hpp"

namespace pronp {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Numerical thresholds shared by every gate in the library.
struct Tolerances {
  double rank_rel = 1e-9;       // singular values below rank_rel * sigma_max are zero
  double psd_rel = 1e-9;        // eigenvalue floor for (semi)definiteness tests
  double residual_abs = 1e-8;   // Frobenius residual ceiling for certificates
  double regular_rel = 1e-10;   // floor for |lambda_i + conj(lambda_j)|

  void validate() const {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(rank_rel) || !positive(psd_rel) || !positive(residual_abs) ||
        !positive(regular_rel)) {
      throw Error(ErrorCode::InvalidArgument,
                  "tolerances must be finite and strictly positive");
    }
  }
};

inline bool all_finite(const Matrix& X) { return X.allFinite(); }

/// Column-stacked vectorization.
inline Vector vec(const Matrix& X) {
  return Eigen::Map<const Vector>(X.data(), X.size());
}

inline Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (rows * cols != v.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "unvec: length " + std::to_string(v.size()) + " != " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

/// Kronecker product; vec(B X A^T) = kron(A, B) vec(X).
inline Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Index j = 0; j < A.cols(); ++j) {
    for (Index i = 0; i < A.rows(); ++i) {
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return K;
}

/// Matrix unit E_ij of size rows x cols.
inline Matrix unit_matrix(Index rows, Index cols, Index i, Index j) {
  Matrix E = Matrix::Zero(rows, cols);
  E(i, j) = 1.0;
  return E;
}

struct RankInfo {
  Index rank = 0;
  Vector singular_values;
  Matrix range;      // orthonormal basis of the column space
  Matrix nullspace;  // orthonormal basis of the kernel
  Matrix pinv;       // pseudoinverse truncated at `rank`
};

/// SVD-based rank decision: singular values <= rank_rel * max(sigma_max,
/// scale) count as zero. Pass `scale` when X is an operator built from data
/// whose natural size is known, so that an X made only of rounding noise has
/// rank 0. The pseudoinverse and both bases are consistent with that rank.
inline RankInfo rank_nullspace_pinv(const Matrix& X, const Tolerances& tol,
                                    double scale = 0.0) {
  RankInfo info;
  const Index rows = X.rows();
  const Index cols = X.cols();
  if (rows == 0 || cols == 0) {
    info.range = Matrix::Zero(rows, 0);
    info.nullspace = Matrix::Identity(cols, cols);
    info.pinv = Matrix::Zero(cols, rows);
    return info;
  }
  Eigen::JacobiSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeFullV);
  info.singular_values = svd.singularValues();
  const double smax = info.singular_values(0);
  const double cutoff = tol.rank_rel * std::max(smax, scale);
  if (smax > 0.0) {
    for (Index k = 0; k < info.singular_values.size(); ++k) {
      if (info.singular_values(k) > cutoff) ++info.rank;
    }
  }
  const Index r = info.rank;
  info.range = svd.matrixU().leftCols(r);
  info.nullspace = svd.matrixV().rightCols(cols - r);
  info.pinv = svd.matrixV().leftCols(r) *
              info.singular_values.head(r).cwiseInverse().asDiagonal() *
              svd.matrixU().leftCols(r).transpose();
  return info;
}

inline Index numerical_rank(const Matrix& X, const Tolerances& tol) {
  return rank_nullspace_pinv(X, tol).rank;
}

inline Matrix symmetric_part(const Matrix& X) {
  return 0.5 * (X + X.transpose());
}

inline bool is_symmetric(const Matrix& X, double abs_tol) {
  if (X.rows() != X.cols()) return false;
  return (X - X.transpose()).norm() <= abs_tol * (1.0 + X.norm());
}

/// Ascending eigenvalues of the symmetric part of X.
inline Vector symmetric_eigenvalues(const Matrix& X) {
  if (X.rows() == 0) return Vector();
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric_part(X),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// Eigenvalue floor used by every semidefiniteness decision.
inline double psd_floor(const Matrix& X, const Tolerances& tol) {
  if (X.rows() == 0) return tol.psd_rel;
  return tol.psd_rel *
         (std::abs(X.trace()) / static_cast<double>(X.rows()) + 1.0);
}

/// True when the smallest eigenvalue of sym(X) is >= -psd_floor.
inline bool is_psd(const Matrix& X, const Tolerances& tol) {
  if (X.rows() == 0) return true;
  return symmetric_eigenvalues(X)(0) >= -psd_floor(X, tol);
}

struct Inertia {
  Index positive = 0;
  Index negative = 0;
  Index zero = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Eigenvalue sign counts of a symmetric matrix; the zero band is the larger
/// of the PSD floor and rank_rel * max|lambda|.
inline Inertia inertia(const Matrix& H, const Tolerances& tol) {
  Inertia in;
  if (H.rows() == 0) return in;
  const Vector ev = symmetric_eigenvalues(H);
  const double band =
      std::max(psd_floor(H, tol), tol.rank_rel * ev.cwiseAbs().maxCoeff());
  for (Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > band) {
      ++in.positive;
    } else if (ev(k) < -band) {
      ++in.negative;
    } else {
      ++in.zero;
    }
  }
  return in;
}

/// Factor H = P^T P with P = Lambda^{1/2} Q^T from the symmetric
/// eigendecomposition H = Q Lambda Q^T.
inline Matrix psd_factor(const Matrix& H, const Tolerances& tol) {
  if (H.rows() != H.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "psd_factor: matrix not square");
  }
  if (!is_symmetric(H, tol.residual_abs)) {
    throw Error(ErrorCode::NotSymmetric, "psd_factor: matrix not symmetric");
  }
  const Index m = H.rows();
  if (m == 0) return Matrix(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric_part(H));
  const Vector& lambda = es.eigenvalues();
  const double floor = psd_floor(H, tol);
  if (lambda(0) <= floor) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "psd_factor: smallest eigenvalue " + std::to_string(lambda(0)) +
                    " <= floor " + std::to_string(floor));
  }
  Matrix P = lambda.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  const double res = (P.transpose() * P - H).norm();
  if (res > tol.residual_abs * (1.0 + H.norm())) {
    throw Error(ErrorCode::ResidualTooLarge,
                "psd_factor: |P^T P - H| = " + std::to_string(res));
  }
  return P;
}

/// Full complex spectrum, sorted by real part then imaginary part.
inline ComplexVector eigenvalues(const Matrix& X) {
  if (X.rows() != X.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvalues: matrix not square");
  }
  if (X.rows() == 0) return ComplexVector();
  Eigen::EigenSolver<Matrix> es(X, false);
  ComplexVector ev = es.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(),
            [](const Complex& a, const Complex& b) {
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });
  return ev;
}

}  // namespace pronp
