// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file pro.hpp
///
/// Positive-real-odd rational functions in realization form
///
///     f(z) = ell (z I_m - M)^{-1} ell^T,   M = -M^T,
///
/// with scalar and matrix-point evaluation and structural diagnostics.
///

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pronp/lyapunov.hpp"
#include "pronp/matrix_kit.hpp"
#include "pronp/random.hpp"

namespace pronp {

/// Realization (ell, M) with M skew-symmetric by construction: only the
/// strict lower triangle is stored, row-major ((1,0), (2,0), (2,1), ...).
class ProRealization {
 public:
  ProRealization() = default;

  ProRealization(RowVector ell, Vector strict_lower)
      : ell_(std::move(ell)), lower_(std::move(strict_lower)) {
    const Index m = ell_.size();
    if (lower_.size() != m * (m - 1) / 2) {
      throw Error(ErrorCode::DimensionMismatch,
                  "ProRealization: strict lower triangle has " +
                      std::to_string(lower_.size()) + " entries, expected " +
                      std::to_string(m * (m - 1) / 2));
    }
    if (!ell_.allFinite() || !lower_.allFinite()) {
      throw Error(ErrorCode::InvalidArgument, "ProRealization: non-finite entry");
    }
  }

  /// From a dense M; rejects M whose symmetric part exceeds `skew_tol`
  /// (relative to 1 + |M|_F) and keeps the exact skew part.
  static ProRealization from_dense(const RowVector& ell, const Matrix& M,
                                   double skew_tol = 1e-8) {
    const Index m = ell.size();
    if (M.rows() != m || M.cols() != m) {
      throw Error(ErrorCode::DimensionMismatch, "ProRealization: M shape");
    }
    if ((M + M.transpose()).norm() > skew_tol * (1.0 + M.norm())) {
      throw Error(ErrorCode::NotSkew, "ProRealization: M is not skew-symmetric");
    }
    const Matrix K = 0.5 * (M - M.transpose());
    Vector lower(m * (m - 1) / 2);
    Index p = 0;
    for (Index i = 1; i < m; ++i) {
      for (Index j = 0; j < i; ++j) lower(p++) = K(i, j);
    }
    return ProRealization(ell, std::move(lower));
  }

  Index m() const { return ell_.size(); }
  const RowVector& ell() const { return ell_; }
  const Vector& strict_lower() const { return lower_; }

  Matrix M() const {
    const Index m = this->m();
    Matrix K = Matrix::Zero(m, m);
    Index p = 0;
    for (Index i = 1; i < m; ++i) {
      for (Index j = 0; j < i; ++j) {
        K(i, j) = lower_(p);
        K(j, i) = -lower_(p);
        ++p;
      }
    }
    return K;
  }

 private:
  RowVector ell_;
  Vector lower_;
};

namespace detail {

inline Complex eval_dense(const RowVector& ell, const Matrix& M, Complex z) {
  const Index m = ell.size();
  if (m == 0) return Complex(0.0);
  ComplexMatrix K = -M.cast<Complex>();
  K.diagonal().array() += z;
  const ComplexVector rhs = ell.transpose().cast<Complex>();
  const ComplexVector y = K.partialPivLu().solve(rhs);
  return (ell.cast<Complex>() * y)(0);
}

inline double pole_distance(const Matrix& M, Complex z) {
  if (M.rows() == 0) return std::numeric_limits<double>::infinity();
  const ComplexVector poles = eigenvalues(M);
  double d = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < poles.size(); ++k) d = std::min(d, std::abs(z - poles(k)));
  return d;
}

inline double spectral_scale(const Matrix& M) {
  return M.rows() == 0 ? 0.0 : eigenvalues(M).cwiseAbs().maxCoeff();
}

}  // namespace detail

/// ell (zI - M)^{-1} ell^T via a linear solve. Throws PoleHit when z lies
/// within regular_rel * (1 + max|pole|) of a pole.
inline Complex eval_scalar(const ProRealization& f, Complex z,
                           const Tolerances& tol = {}) {
  const Matrix M = f.M();
  const double scale = detail::spectral_scale(M);
  if (detail::pole_distance(M, z) <= tol.regular_rel * (1.0 + scale + std::abs(z))) {
    throw Error(ErrorCode::PoleHit, "eval_scalar: z is a pole of f");
  }
  return detail::eval_dense(f.ell(), M, z);
}

inline double eval_scalar(const ProRealization& f, double t,
                          const Tolerances& tol = {}) {
  return eval_scalar(f, Complex(t, 0.0), tol).real();
}

/// f(A) = (ell (x) I)(I_m (x) A - M (x) I)^{-1}(ell^T (x) I), one solve of
/// size mn.
inline Matrix eval_matrix(const ProRealization& f, const Matrix& A,
                          const Tolerances& tol = {}) {
  if (A.rows() != A.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "eval_matrix: A not square");
  }
  if (!is_lyapunov_regular(A, tol)) {
    throw Error(ErrorCode::NotLyapunovRegular, "eval_matrix: A not Lyapunov regular");
  }
  const Index n = A.rows();
  const Index m = f.m();
  if (m == 0) return Matrix::Zero(n, n);
  const Matrix In = Matrix::Identity(n, n);
  const Matrix K = kron(Matrix::Identity(m, m), A) - kron(f.M(), In);
  const Eigen::PartialPivLU<Matrix> lu(K);
  if (!(lu.rcond() > 10.0 * std::numeric_limits<double>::epsilon())) {
    throw Error(ErrorCode::SingularPencil, "eval_matrix: I (x) A - M (x) I singular");
  }
  const Matrix Y = lu.solve(kron(f.ell().transpose(), In));
  return kron(f.ell(), In) * Y;
}

struct ProDiagnostics {
  bool pro_ok = false;
  bool skew = false;            // |M + M^T|_F within tolerance
  bool poles_imaginary = false; // every eigenvalue of M on iR
  bool odd = false;             // f(-t) = -f(t) on the samples
  bool nonnegative = false;     // f(t) >= 0 on the samples in (0, T]
  bool degenerate = false;      // ell = 0, f identically zero
  double skew_defect = 0.0;
  double max_pole_real_part = 0.0;
  double max_odd_defect = 0.0;
  double min_value = 0.0;
  Index samples_used = 0;
  std::vector<std::string> notes;
};

/// Checks the PRO properties of a raw (ell, M) pair on `samples` points
/// t in (0, horizon], log-uniformly spaced at random.
inline ProDiagnostics diagnose_realization(const RowVector& ell, const Matrix& M,
                                           Index samples, std::uint64_t seed,
                                           const Tolerances& tol = {},
                                           double horizon = 100.0) {
  ProDiagnostics d;
  const Index m = ell.size();
  if (M.rows() != m || M.cols() != m) {
    throw Error(ErrorCode::DimensionMismatch, "diagnose_realization: M shape");
  }
  const double mscale = 1.0 + M.norm();
  d.skew_defect = (M + M.transpose()).norm();
  d.skew = d.skew_defect <= tol.residual_abs * mscale;

  const ComplexVector poles = m > 0 ? eigenvalues(M) : ComplexVector();
  for (Index k = 0; k < poles.size(); ++k) {
    d.max_pole_real_part = std::max(d.max_pole_real_part, std::abs(poles(k).real()));
  }
  d.poles_imaginary = d.max_pole_real_part <= tol.rank_rel * mscale;

  d.degenerate = ell.size() == 0 || ell.isZero(0.0);
  if (d.degenerate) d.notes.push_back("ell = 0: f is identically zero");

  d.min_value = std::numeric_limits<double>::infinity();
  Rng rng = trial_stream(seed, 0);
  std::uniform_real_distribution<double> logt(std::log(1e-2), std::log(horizon));
  for (Index s = 0; s < samples; ++s) {
    const double t = std::exp(logt(rng));
    if (detail::pole_distance(M, Complex(t)) <= tol.regular_rel * mscale ||
        detail::pole_distance(M, Complex(-t)) <= tol.regular_rel * mscale) {
      continue;
    }
    const double fp = detail::eval_dense(ell, M, Complex(t)).real();
    const double fm = detail::eval_dense(ell, M, Complex(-t)).real();
    ++d.samples_used;
    d.max_odd_defect = std::max(d.max_odd_defect, std::abs(fp + fm) / (1.0 + std::abs(fp)));
    d.min_value = std::min(d.min_value, fp / (1.0 + std::abs(fp)));
  }
  if (d.samples_used == 0) d.min_value = 0.0;
  d.odd = d.max_odd_defect <= tol.residual_abs;
  d.nonnegative = d.min_value >= -tol.residual_abs;
  if (!d.skew) d.notes.push_back("M is not skew-symmetric");
  if (!d.poles_imaginary) d.notes.push_back("poles off the imaginary axis");
  if (!d.odd) d.notes.push_back("f(-t) != -f(t) on samples");
  if (!d.nonnegative) d.notes.push_back("f(t) < 0 for some sampled t > 0");
  d.pro_ok = d.skew && d.poles_imaginary && d.odd && d.nonnegative;
  return d;
}

inline ProDiagnostics pro_diagnostics(const ProRealization& f, Index samples,
                                      std::uint64_t seed,
                                      const Tolerances& tol = {}) {
  return diagnose_realization(f.ell(), f.M(), samples, seed, tol);
}

}  // namespace pronp
