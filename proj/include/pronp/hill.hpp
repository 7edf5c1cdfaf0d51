// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file hill.hpp
///
/// Choi matrices, the span of the n x n blocks of a matricization, minimal
/// Hill representations
///
///     L(V) = sum_{k,l} H_kl C_k V C_l^T,
///
/// complete-positivity and sampled positivity tests, and a randomized
/// diagnostic for the independence property of a matrix subspace under
/// evaluation at a single vector.
///
/// Block convention: block (i, j) of an n^2 x n^2 matrix occupies rows
/// i*n .. i*n+n-1 and columns j*n .. j*n+n-1. With this convention the Choi
/// matrix equals Chat^* H Chat for Chat^* = [vec C_1 ... vec C_m], and the
/// blocks of the matricization span exactly span{C_k}.
///

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pronp/commutant.hpp"
#include "pronp/lyapunov.hpp"
#include "pronp/matrix_kit.hpp"
#include "pronp/random.hpp"

namespace pronp {

struct ChoiMatrix {
  Index n = 0;
  Matrix matrix;  // n^2 x n^2, block (i, j) = L(E_ij)

  Matrix block(Index i, Index j) const {
    return matrix.block(i * n, j * n, n, n);
  }
};

inline ChoiMatrix choi(const LinearMatrixMap& L) {
  const Index n = L.n();
  ChoiMatrix out{n, Matrix(n * n, n * n)};
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      out.matrix.block(i * n, j * n, n, n) = L.apply(unit_matrix(n, n, i, j));
    }
  }
  return out;
}

/// Orthonormal basis (vec inner product) of span{L_ij}, the n x n blocks of
/// the matricization. Basis elements are left singular vectors of the
/// stacked blocks, reshaped.
inline SubspaceBasis block_span(const LinearMatrixMap& L, const Tolerances& tol) {
  const Index n = L.n();
  const Matrix& Lm = L.matricization();
  Matrix stacked(n * n, n * n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      stacked.col(i * n + j) = vec(Lm.block(i * n, j * n, n, n));
    }
  }
  return SubspaceBasis::from_columns(n, rank_nullspace_pinv(stacked, tol).range);
}

class HillRepresentation {
 public:
  HillRepresentation() = default;

  HillRepresentation(std::vector<Matrix> C, Matrix H)
      : C_(std::move(C)), H_(std::move(H)) {
    if (H_.rows() != H_.cols() || H_.rows() != Index(C_.size())) {
      throw Error(ErrorCode::DimensionMismatch, "Hill matrix size != #coefficients");
    }
    n_ = C_.empty() ? 0 : C_.front().rows();
    for (const auto& Ck : C_) {
      if (Ck.rows() != n_ || Ck.cols() != n_) {
        throw Error(ErrorCode::DimensionMismatch, "Hill coefficient shape");
      }
    }
  }

  Index n() const { return n_; }
  Index m() const { return H_.rows(); }
  const std::vector<Matrix>& C() const { return C_; }
  const Matrix& H() const { return H_; }

  /// sum_{k,l} H_kl C_k V C_l^T
  Matrix apply(const Matrix& V) const {
    Matrix out = Matrix::Zero(n_, n_);
    for (Index k = 0; k < m(); ++k) {
      const Matrix CkV = C_[std::size_t(k)] * V;
      for (Index l = 0; l < m(); ++l) {
        out.noalias() += H_(k, l) * CkV * C_[std::size_t(l)].transpose();
      }
    }
    return out;
  }

  /// Chat^* = [vec C_1 ... vec C_m], n^2 x m.
  Matrix coefficient_matrix() const {
    Matrix X(n_ * n_, m());
    for (Index k = 0; k < m(); ++k) X.col(k) = vec(C_[std::size_t(k)]);
    return X;
  }

  /// Vertical stack (mn x n) whose k-th block is C_k^T, so that
  /// stack^T (H (x) V) stack = sum_{k,l} H_kl C_k V C_l^T.
  Matrix transpose_stack() const {
    Matrix S(m() * n_, n_);
    for (Index k = 0; k < m(); ++k) {
      S.middleRows(k * n_, n_) = C_[std::size_t(k)].transpose();
    }
    return S;
  }

 private:
  Index n_ = 0;
  std::vector<Matrix> C_;
  Matrix H_;
};

namespace detail {

inline Matrix checked_choi(const LinearMatrixMap& L, const Tolerances& tol) {
  Matrix C = choi(L).matrix;
  if (!is_symmetric(C, tol.residual_abs)) {
    throw Error(ErrorCode::NotStarLinear,
                "Choi matrix is not symmetric; the map is not *-linear");
  }
  return symmetric_part(C);
}

}  // namespace detail

/// Hill matrix of L with respect to a given basis of span{L_ij}:
/// H^T = pinv(Chat^*) Choi pinv(Chat).
inline HillRepresentation hill_from_basis(const LinearMatrixMap& L,
                                          const SubspaceBasis& W,
                                          const Tolerances& tol) {
  if (W.n() != L.n()) {
    throw Error(ErrorCode::DimensionMismatch, "hill_from_basis: basis size");
  }
  const Matrix choi_m = detail::checked_choi(L, tol);
  const Matrix Cstar = W.stacked();
  const Matrix left = rank_nullspace_pinv(Cstar, tol).pinv;
  const Matrix Ht = left * choi_m * left.transpose();
  return HillRepresentation(W.basis(), symmetric_part(Ht.transpose()));
}

/// Minimal Hill representation: m = rank(Choi) coefficients spanning the
/// block span, with the Hill matrix recovered from the Choi matrix.
inline HillRepresentation minimal_hill(const LinearMatrixMap& L,
                                       const Tolerances& tol) {
  const Matrix choi_m = detail::checked_choi(L, tol);
  const Index choi_rank = numerical_rank(choi_m, tol);
  const SubspaceBasis W = block_span(L, tol);
  if (W.dim() != choi_rank) {
    throw Error(ErrorCode::RankMismatch,
                "dim span{L_ij} = " + std::to_string(W.dim()) +
                    " but rank(Choi) = " + std::to_string(choi_rank));
  }
  HillRepresentation rep = hill_from_basis(L, W, tol);
  if (numerical_rank(rep.H(), tol) != rep.m()) {
    throw Error(ErrorCode::RankMismatch, "minimal Hill matrix is singular");
  }
  return rep;
}

/// max over `samples` random V of |rep(V) - L(V)|_F / (1 + |L(V)|_F).
inline double hill_reconstruction_error(const LinearMatrixMap& L,
                                        const HillRepresentation& rep,
                                        Index samples, std::uint64_t seed) {
  double worst = 0.0;
  for (Index s = 0; s < samples; ++s) {
    Rng rng = trial_stream(seed, std::uint64_t(s));
    const Matrix V = gaussian_matrix(L.n(), L.n(), rng);
    const Matrix LV = L.apply(V);
    worst = std::max(worst, (rep.apply(V) - LV).norm() / (1.0 + LV.norm()));
  }
  return worst;
}

/// Choi's criterion: CP iff the Choi matrix is PSD.
inline bool is_completely_positive(const LinearMatrixMap& L,
                                   const Tolerances& tol) {
  return is_psd(detail::checked_choi(L, tol), tol);
}

struct PositivityVerdict {
  bool violation = false;
  Vector z;
  Vector x;
  double value = 0.0;  // (z (x) x)^T Choi (z (x) x) at the witness
  Index probes = 0;    // number of (z, x) pairs evaluated
};

namespace detail {

/// Coordinate vectors followed by the +-1 sign vectors (first entry +1),
/// all normalized. Sign vectors are skipped above n = 10.
inline std::vector<Vector> structured_probes(Index n) {
  std::vector<Vector> out;
  for (Index i = 0; i < n; ++i) out.push_back(Vector::Unit(n, i));
  if (n >= 2 && n <= 10) {
    const std::uint64_t count = std::uint64_t(1) << (n - 1);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      Vector v = Vector::Ones(n);
      for (Index b = 1; b < n; ++b) {
        if ((mask >> (b - 1)) & 1u) v(b) = -1.0;
      }
      out.push_back(v / std::sqrt(double(n)));
    }
  }
  return out;
}

}  // namespace detail

/// Necessary test for positivity: L is positive iff
/// (z (x) x)^T Choi (z (x) x) >= 0 for all x, z. Structured probe pairs come
/// first, then `trials` random unit pairs.
inline PositivityVerdict positivity_sample_test(const LinearMatrixMap& L,
                                                Index trials,
                                                std::uint64_t seed,
                                                const Tolerances& tol = {}) {
  const Matrix C = detail::checked_choi(L, tol);
  const double floor = psd_floor(C, tol);
  PositivityVerdict out;
  auto probe = [&](const Vector& z, const Vector& x) {
    ++out.probes;
    const Vector w = kron(z, x);
    const double q = w.dot(C * w);
    if (q < -floor) {
      out.violation = true;
      out.z = z;
      out.x = x;
      out.value = q;
      return true;
    }
    return false;
  };
  const auto structured = detail::structured_probes(L.n());
  for (const auto& z : structured) {
    for (const auto& x : structured) {
      if (probe(z, x)) return out;
    }
  }
  for (Index t = 0; t < trials; ++t) {
    Rng rng = trial_stream(seed, std::uint64_t(t));
    const Vector z = unit_vector_sample(L.n(), rng);
    const Vector x = unit_vector_sample(L.n(), rng);
    if (probe(z, x)) return out;
  }
  return out;
}

struct C1Verdict {
  bool witness_found = false;
  Vector v;
  Index probes = 0;
};

/// Look for v with {X_k v} linearly independent over the basis of W. A
/// witness certifies the property for W. Probes: e_1..e_n, the all-ones
/// vector, then `trials` Gaussian vectors. Inconclusive when dim W > n.
inline C1Verdict c1_diagnostic(const SubspaceBasis& W, Index trials,
                               std::uint64_t seed, const Tolerances& tol = {}) {
  C1Verdict out;
  const Index n = W.n();
  const Index d = W.dim();
  if (d > n) return out;
  auto probe = [&](const Vector& v) {
    ++out.probes;
    Matrix images(n, d);
    for (Index k = 0; k < d; ++k) images.col(k) = W[std::size_t(k)] * v;
    if (numerical_rank(images, tol) == d) {
      out.witness_found = true;
      out.v = v;
      return true;
    }
    return false;
  };
  for (Index i = 0; i < n; ++i) {
    if (probe(Vector::Unit(n, i))) return out;
  }
  if (probe(Vector::Ones(n))) return out;
  for (Index t = 0; t < trials; ++t) {
    Rng rng = trial_stream(seed, std::uint64_t(t));
    if (probe(gaussian_vector(n, rng))) return out;
  }
  return out;
}

}  // namespace pronp
