// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file lyapunov.hpp
///
/// Linear matrix maps stored by matricization, Lyapunov operators
/// X -> XY + Y^T X, Lyapunov regularity, the composed map
/// L_B o L_A^{-1}, and a randomized one-sided Lyapunov-order test.
///

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pronp/matrix_kit.hpp"
#include "pronp/random.hpp"

namespace pronp {

/// A linear map R^{n x n} -> R^{n x n} held as its n^2 x n^2 matricization,
/// i.e. vec(map(X)) = matricization * vec(X).
class LinearMatrixMap {
 public:
  LinearMatrixMap() = default;

  explicit LinearMatrixMap(Matrix matricization)
      : L_(std::move(matricization)) {
    if (L_.rows() != L_.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "matricization not square");
    }
    n_ = static_cast<Index>(std::llround(std::sqrt(double(L_.rows()))));
    if (n_ * n_ != L_.rows()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "matricization size is not a perfect square");
    }
  }

  /// Build the matricization column by column from the action on E_ij.
  template <typename F>
  static LinearMatrixMap from_action(Index n, F&& action) {
    Matrix L(n * n, n * n);
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        const Matrix image = action(unit_matrix(n, n, i, j));
        L.col(i + j * n) = vec(image);
      }
    }
    return LinearMatrixMap(std::move(L));
  }

  static LinearMatrixMap identity(Index n) {
    return LinearMatrixMap(Matrix::Identity(n * n, n * n));
  }

  Index n() const { return n_; }
  const Matrix& matricization() const { return L_; }

  Matrix apply(const Matrix& X) const {
    if (X.rows() != n_ || X.cols() != n_) {
      throw Error(ErrorCode::DimensionMismatch, "apply: argument shape");
    }
    return unvec(L_ * vec(X), n_, n_);
  }

 private:
  Index n_ = 0;
  Matrix L_;
};

namespace detail {

inline void require_square(const Matrix& X, const char* what) {
  if (X.rows() != X.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " must be square");
  }
}

}  // namespace detail

/// Lyapunov operator X -> XY + Y^T X; matricization Y^T (x) I + I (x) Y^T.
inline LinearMatrixMap lyap_map(const Matrix& Y) {
  detail::require_square(Y, "lyap_map argument");
  const Index n = Y.rows();
  const Matrix I = Matrix::Identity(n, n);
  return LinearMatrixMap(kron(Y.transpose(), I) + kron(I, Y.transpose()));
}

/// min_{i,j} |lambda_i + conj(lambda_j)| over the spectrum of A.
inline double lyapunov_gap(const Matrix& A) {
  detail::require_square(A, "lyapunov_gap argument");
  const ComplexVector ev = eigenvalues(A);
  double gap = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < ev.size(); ++i) {
    for (Index j = 0; j < ev.size(); ++j) {
      gap = std::min(gap, std::abs(ev(i) + std::conj(ev(j))));
    }
  }
  return gap;
}

/// True iff no two eigenvalues satisfy lambda_i + conj(lambda_j) = 0, up to
/// the relative floor regular_rel * max|lambda|.
inline bool is_lyapunov_regular(const Matrix& A, const Tolerances& tol) {
  detail::require_square(A, "is_lyapunov_regular argument");
  if (A.rows() == 0) return false;
  const ComplexVector ev = eigenvalues(A);
  const double scale = ev.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) return false;
  return lyapunov_gap(A) > tol.regular_rel * scale;
}

/// Matricization of L_B o L_A^{-1}.
inline LinearMatrixMap lab_map(const Matrix& A, const Matrix& B,
                               const Tolerances& tol) {
  detail::require_square(A, "A");
  if (B.rows() != A.rows() || B.cols() != A.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "A and B must have equal shape");
  }
  if (!is_lyapunov_regular(A, tol)) {
    throw Error(ErrorCode::NotLyapunovRegular, "lab_map: A is not Lyapunov regular");
  }
  const Matrix LA = lyap_map(A).matricization();
  const Matrix LB = lyap_map(B).matricization();
  // X L_A = L_B  <=>  L_A^T X^T = L_B^T
  Matrix X = LA.transpose().partialPivLu().solve(LB.transpose()).transpose();
  return LinearMatrixMap(std::move(X));
}

/// Symmetric H with HA + A^T H = Q.
inline Matrix solve_lyapunov(const Matrix& A, const Matrix& Q,
                             const Tolerances& tol) {
  detail::require_square(A, "A");
  if (Q.rows() != A.rows() || Q.cols() != A.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_lyapunov: Q shape");
  }
  if (!is_lyapunov_regular(A, tol)) {
    throw Error(ErrorCode::NotLyapunovRegular,
                "solve_lyapunov: A is not Lyapunov regular");
  }
  const Index n = A.rows();
  const Vector h = lyap_map(A).matricization().partialPivLu().solve(vec(Q));
  return symmetric_part(unvec(h, n, n));
}

/// Draw a non-strict Lyapunov solution of A: H solving L_A(H) = G G^T for a
/// standard-normal G with `rank` columns (rank <= 0 means n columns).
inline Matrix sample_lyapunov_solution(const Matrix& A, Rng& rng,
                                       const Tolerances& tol, Index rank = 0) {
  detail::require_square(A, "A");
  const Index n = A.rows();
  const Matrix G = gaussian_matrix(n, rank > 0 ? rank : n, rng);
  return solve_lyapunov(A, G * G.transpose(), tol);
}

inline Matrix sample_lyapunov_solution(const Matrix& A, std::uint64_t seed,
                                       const Tolerances& tol = {}) {
  Rng rng = trial_stream(seed, 0);
  return sample_lyapunov_solution(A, rng, tol);
}

struct OrderVerdict {
  bool violation = false;
  Index trial = -1;          // index of the first violating trial
  Matrix witness;            // violating H (empty when none found)
  double min_eigenvalue = 0; // lambda_min(H B + B^T H) at the witness
  Index trials = 0;
};

/// Randomized necessary test of A <=_L B: samples H with HA + A^T H PSD and
/// checks HB + B^T H PSD. A violation disproves the order; no violation is
/// inconclusive. Even trials use full-rank right-hand sides, odd trials rank
/// one (extremal rays of the PSD cone). The reported witness is always the
/// lowest violating trial index, independent of `threads`.
inline OrderVerdict lyap_order_sample_test(const Matrix& A, const Matrix& B,
                                           Index trials, std::uint64_t seed,
                                           const Tolerances& tol = {},
                                           unsigned threads = 1) {
  detail::require_square(A, "A");
  if (B.rows() != A.rows() || B.cols() != A.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "A and B must have equal shape");
  }
  if (!is_lyapunov_regular(A, tol)) {
    throw Error(ErrorCode::NotLyapunovRegular,
                "lyap_order_sample_test: A is not Lyapunov regular");
  }
  const Index n = A.rows();
  const Eigen::PartialPivLU<Matrix> lu(lyap_map(A).matricization());

  auto run_trial = [&](Index t, Matrix& H, double& lmin) {
    Rng rng = trial_stream(seed, static_cast<std::uint64_t>(t));
    const Matrix G = gaussian_matrix(n, (t % 2 == 0) ? n : 1, rng);
    const Matrix Q = G * G.transpose();
    H = symmetric_part(unvec(lu.solve(vec(Q)), n, n));
    const Matrix W = H * B + B.transpose() * H;
    lmin = symmetric_eigenvalues(W)(0);
    return lmin < -psd_floor(W, tol);
  };

  OrderVerdict verdict;
  verdict.trials = trials;
  if (threads <= 1) {
    for (Index t = 0; t < trials; ++t) {
      Matrix H;
      double lmin = 0;
      if (run_trial(t, H, lmin)) {
        verdict.violation = true;
        verdict.trial = t;
        verdict.witness = std::move(H);
        verdict.min_eigenvalue = lmin;
        return verdict;
      }
    }
    return verdict;
  }

  std::atomic<Index> first{trials};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (Index t = w; t < trials; t += threads) {
        if (t >= first.load()) return;
        Matrix H;
        double lmin = 0;
        if (run_trial(t, H, lmin)) {
          Index cur = first.load();
          while (t < cur && !first.compare_exchange_weak(cur, t)) {
          }
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first.load() < trials) {
    // Recompute the winning trial serially so the witness is reproducible.
    Matrix H;
    double lmin = 0;
    run_trial(first.load(), H, lmin);
    verdict.violation = true;
    verdict.trial = first.load();
    verdict.witness = std::move(H);
    verdict.min_eigenvalue = lmin;
  }
  return verdict;
}

}  // namespace pronp
