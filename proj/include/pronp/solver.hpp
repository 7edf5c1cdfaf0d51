// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file solver.hpp
///
/// Constructive PRO interpolation f(A) = B in the suboptimal case
/// (rank of the Hill-Pick matrix equal to dim {A}''):
///
///   1. Hill-Pick matrix H of L_B o L_A^{-1} from a minimal Hill
///      representation with coefficients C_1..C_m;
///   2. H = P^T P and, for each R in a collection, the pencils
///          L_R = [ R ; (P (x) R) Cs ],   M_R = [ RB ; -(P (x) RA) Cs ],
///      where Cs stacks C_k^T;
///   3. a skew S with (S (x) I_n) L_R = M_R for every R;
///   4. S = [[0, ell], [-ell^T, -M]] gives f(z) = ell (zI - M)^{-1} ell^T.
///

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pronp/commutant.hpp"
#include "pronp/hill.hpp"
#include "pronp/lyapunov.hpp"
#include "pronp/matrix_kit.hpp"
#include "pronp/pro.hpp"
#include "pronp/random.hpp"

namespace pronp {

struct HillPick {
  HillRepresentation rep;
  Index m_max = 0;

  const Matrix& H() const { return rep.H(); }
  Index m() const { return rep.m(); }
};

/// Minimal Hill representation of L_B o L_A^{-1} together with dim {A}''.
inline HillPick hill_pick(const Matrix& A, const Matrix& B, const Tolerances& tol) {
  if (A.rows() != A.cols() || B.rows() != A.rows() || B.cols() != A.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "hill_pick: A, B must be square of equal size");
  }
  if (!is_lyapunov_regular(A, tol)) {
    throw Error(ErrorCode::NotLyapunovRegular, "hill_pick: A is not Lyapunov regular");
  }
  const SubspaceBasis bic = bicommutant_basis(A, tol);
  const Membership mem = membership(B, bic, tol);
  if (!mem.member) {
    throw Error(ErrorCode::NotInBicommutant,
                "hill_pick: B is not in {A}'' (residual " + std::to_string(mem.residual) + ")");
  }
  return HillPick{minimal_hill(lab_map(A, B, tol), tol), bic.dim()};
}

/// Pencils L_R, M_R for a collection R_1..R_k, stored side by side:
/// member r occupies columns r*n .. r*n+n-1 of L and M.
class PencilPair {
 public:
  PencilPair(Matrix P, Matrix stack, std::vector<Matrix> collection, Matrix L, Matrix M)
      : P_(std::move(P)),
        stack_(std::move(stack)),
        collection_(std::move(collection)),
        L_(std::move(L)),
        M_(std::move(M)) {}

  Index n() const { return stack_.cols(); }
  Index m() const { return P_.rows(); }
  Index size() const { return Index(collection_.size()); }

  const Matrix& P() const { return P_; }
  const Matrix& stack() const { return stack_; }
  const std::vector<Matrix>& collection() const { return collection_; }
  const Matrix& L() const { return L_; }
  const Matrix& M() const { return M_; }

  Matrix L_member(Index r) const { return L_.middleCols(r * n(), n()); }
  Matrix M_member(Index r) const { return M_.middleCols(r * n(), n()); }

 private:
  Matrix P_;
  Matrix stack_;
  std::vector<Matrix> collection_;
  Matrix L_;
  Matrix M_;
};

/// The n^2 matrix units E_ij.
inline std::vector<Matrix> standard_collection(Index n) {
  std::vector<Matrix> out;
  out.reserve(std::size_t(n * n));
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) out.push_back(unit_matrix(n, n, i, j));
  }
  return out;
}

inline PencilPair build_pencils(const Matrix& A, const Matrix& B,
                                const HillRepresentation& rep,
                                std::vector<Matrix> collection,
                                const Tolerances& tol) {
  if (collection.empty()) {
    throw Error(ErrorCode::InvalidArgument, "build_pencils: empty collection");
  }
  const Index n = A.rows();
  const Index m = rep.m();
  if (rep.n() != n && m > 0) {
    throw Error(ErrorCode::DimensionMismatch, "build_pencils: Hill representation size");
  }
  Matrix P = psd_factor(rep.H(), tol);
  Matrix stack = m > 0 ? rep.transpose_stack() : Matrix(0, n);
  const Index rows = (1 + m) * n;
  const Index k = Index(collection.size());
  Matrix L(rows, k * n);
  Matrix M(rows, k * n);
  for (Index r = 0; r < k; ++r) {
    const Matrix& R = collection[std::size_t(r)];
    if (R.rows() != n || R.cols() != n) {
      throw Error(ErrorCode::DimensionMismatch, "build_pencils: collection member shape");
    }
    L.block(0, r * n, n, n) = R;
    M.block(0, r * n, n, n) = R * B;
    if (m > 0) {
      L.block(n, r * n, m * n, n) = kron(P, R) * stack;
      M.block(n, r * n, m * n, n) = -kron(P, R * A) * stack;
    }
  }
  return PencilPair(std::move(P), std::move(stack), std::move(collection),
                    std::move(L), std::move(M));
}

struct SkewFit {
  Matrix S;               // (1+m) x (1+m), exactly skew
  double residual = 0.0;  // |(S (x) I) L - M|_F over the collection
  double threshold = 0.0; // residual_abs * (1 + |M|_F)
};

/// Least squares over skew S: minimize sum_R |(S (x) I_n) L_R - M_R|_F^2 in
/// the (m+1)m/2 strictly-upper entries. Minimum-norm solution when the
/// system is rank deficient.
inline SkewFit fit_skew(const PencilPair& pencils, const Tolerances& tol) {
  const Index n = pencils.n();
  const Index p = pencils.m() + 1;
  const Matrix& L = pencils.L();
  const Matrix& M = pencils.M();
  const Index cols = L.cols();
  std::vector<std::pair<Index, Index>> unknowns;
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) unknowns.emplace_back(i, j);
  }
  SkewFit fit;
  fit.S = Matrix::Zero(p, p);
  fit.threshold = tol.residual_abs * (1.0 + M.norm());
  if (!unknowns.empty()) {
    Matrix D(L.size(), Index(unknowns.size()));
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const auto [i, j] = unknowns[u];
      // (E_ij - E_ji) (x) I_n applied to L
      Matrix contrib = Matrix::Zero(L.rows(), cols);
      contrib.middleRows(i * n, n) = L.middleRows(j * n, n);
      contrib.middleRows(j * n, n) = -L.middleRows(i * n, n);
      D.col(Index(u)) = vec(contrib);
    }
    const Vector s = D.completeOrthogonalDecomposition().solve(vec(M));
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const auto [i, j] = unknowns[u];
      fit.S(i, j) = s(Index(u));
      fit.S(j, i) = -s(Index(u));
    }
  }
  fit.residual = (kron(fit.S, Matrix::Identity(n, n)) * L - M).norm();
  return fit;
}

/// As fit_skew, but throws ResidualTooLarge when no skew S solves the
/// pencil equations to tolerance.
inline Matrix solve_skew(const PencilPair& pencils, const Tolerances& tol) {
  SkewFit fit = fit_skew(pencils, tol);
  if (fit.residual > fit.threshold) {
    throw Error(ErrorCode::ResidualTooLarge,
                "solve_skew: residual " + std::to_string(fit.residual) +
                    " exceeds " + std::to_string(fit.threshold));
  }
  return std::move(fit.S);
}

/// S = [[0, ell], [-ell^T, -M]]  ->  (ell, M).
inline ProRealization extract_realization(const Matrix& S, double skew_tol = 1e-8) {
  if (S.rows() != S.cols() || S.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "extract_realization: S must be square, nonempty");
  }
  if ((S + S.transpose()).norm() > skew_tol * (1.0 + S.norm())) {
    throw Error(ErrorCode::NotSkew, "extract_realization: S is not skew-symmetric");
  }
  const Index m = S.rows() - 1;
  const RowVector ell = S.row(0).tail(m);
  const Matrix M = -S.bottomRightCorner(m, m);
  return ProRealization::from_dense(ell, M, skew_tol);
}

// ---------------------------------------------------------------------------
// Structural identities (used by tests and the report diagnostics)

/// |(B^T X - Cs^T (H (x) A^T X) Cs) - (Cs^T (H (x) XA) Cs - XB)|_F
inline double lyap_identity_residual(const Matrix& A, const Matrix& B,
                                     const HillRepresentation& rep, const Matrix& X) {
  const Matrix Cs = rep.transpose_stack();
  const Matrix& H = rep.H();
  const Matrix lhs = B.transpose() * X - Cs.transpose() * kron(H, A.transpose() * X) * Cs;
  const Matrix rhs = Cs.transpose() * kron(H, X * A) * Cs - X * B;
  return (lhs - rhs).norm();
}

/// |M_{R'}^T L_R + L_{R'}^T M_R|_F for members r (R) and r2 (R').
inline double skew_intertwining_residual(const PencilPair& pencils, Index r, Index r2) {
  return (pencils.M_member(r2).transpose() * pencils.L_member(r) +
          pencils.L_member(r2).transpose() * pencils.M_member(r))
      .norm();
}

struct RangeStructure {
  Index dim_U = 0;            // dim of ran L over the collection
  Matrix coefficient_basis;   // orthonormal basis of Utilde in R^{m+1}
  Matrix complement_basis;    // orthonormal basis of Utilde^perp
  double projector_gap = 0.0; // |P_U - P_Utilde (x) I_n|_F
};

/// Splits ran L = U into Utilde (x) R^n. Vectors are ordered so that
/// e_q (x) y occupies entries q*n .. q*n+n-1.
inline RangeStructure range_structure(const PencilPair& pencils, const Tolerances& tol) {
  const Index n = pencils.n();
  const Index p = pencils.m() + 1;
  const Matrix Q = rank_nullspace_pinv(pencils.L(), tol).range;
  RangeStructure out;
  out.dim_U = Q.cols();
  Matrix Z(p, n * Q.cols());
  for (Index k = 0; k < Q.cols(); ++k) {
    // column q of the n x p reshaping is block q
    Z.middleCols(k * n, n) = unvec(Q.col(k), n, p).transpose();
  }
  const RankInfo zi = rank_nullspace_pinv(Z, tol);
  out.coefficient_basis = zi.range;
  out.complement_basis = rank_nullspace_pinv(Z.transpose(), tol).nullspace;
  const Matrix Pu = Q * Q.transpose();
  const Matrix Pt = zi.range * zi.range.transpose();
  out.projector_gap = (Pu - kron(Pt, Matrix::Identity(n, n))).norm();
  return out;
}

/// max over an orthonormal basis N of ker L of |M N_col|, i.e. how far
/// ker L is from lying in ker M.
inline double kernel_inclusion_residual(const PencilPair& pencils, const Tolerances& tol) {
  const Matrix N = rank_nullspace_pinv(pencils.L(), tol).nullspace;
  if (N.cols() == 0) return 0.0;
  return (pencils.M() * N).colwise().norm().maxCoeff();
}

/// S + Q K Q^T for Q an orthonormal basis of Utilde^perp and K skew; the
/// pencil equations are unchanged by this modification.
inline Matrix perturb_free_block(const Matrix& S, const Matrix& complement,
                                 const Matrix& K) {
  if (K.rows() != complement.cols() || K.cols() != complement.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "perturb_free_block: K shape");
  }
  return S + complement * (0.5 * (K - K.transpose())) * complement.transpose();
}

// ---------------------------------------------------------------------------
// End-to-end pipeline

enum class SolveStatus {
  solved,
  infeasible,
  not_suboptimal,
  not_regular,
  not_in_bicommutant,
  numerical_failure,
};

constexpr std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::solved: return "solved";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::not_suboptimal: return "not_suboptimal";
    case SolveStatus::not_regular: return "not_regular";
    case SolveStatus::not_in_bicommutant: return "not_in_bicommutant";
    case SolveStatus::numerical_failure: return "numerical_failure";
  }
  return "numerical_failure";
}

inline std::optional<SolveStatus> parse_status(std::string_view s) {
  for (auto st : {SolveStatus::solved, SolveStatus::infeasible, SolveStatus::not_suboptimal,
                  SolveStatus::not_regular, SolveStatus::not_in_bicommutant,
                  SolveStatus::numerical_failure}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

struct SolveReport {
  SolveStatus status = SolveStatus::numerical_failure;
  Matrix hill_pick;                           // m x m (empty if not reached)
  Index m = 0;
  Index m_max = 0;
  std::optional<ProRealization> realization;
  std::optional<double> interp_residual;      // |f(A) - B|_F
  std::optional<double> skew_residual;        // |(S (x) I) L - M|_F
  std::vector<std::string> diagnostics;
};

/// Gates in order: Lyapunov regularity, membership of B in {A}'', Hill-Pick
/// extraction, m = m_max, H positive definite, skew solve, f(A) = B. Every
/// mathematical rejection is a status; only malformed input throws.
inline SolveReport solve(const Matrix& A, const Matrix& B, const Tolerances& tol = {}) {
  tol.validate();
  if (A.rows() == 0 || A.rows() != A.cols() || B.rows() != A.rows() || B.cols() != A.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "solve: A, B must be nonempty square of equal size");
  }
  if (!A.allFinite() || !B.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "solve: non-finite input");
  }
  SolveReport rep;
  auto note = [&](std::string s) { rep.diagnostics.push_back(std::move(s)); };

  const SubspaceBasis bic = bicommutant_basis(A, tol);
  rep.m_max = bic.dim();

  if (!is_lyapunov_regular(A, tol)) {
    rep.status = SolveStatus::not_regular;
    note("min |lambda_i + conj(lambda_j)| = " + std::to_string(lyapunov_gap(A)));
    return rep;
  }
  const Membership mem = membership(B, bic, tol);
  if (!mem.member) {
    rep.status = SolveStatus::not_in_bicommutant;
    note("distance of B to {A}'' = " + std::to_string(mem.residual));
    return rep;
  }

  HillRepresentation hill;
  try {
    hill = minimal_hill(lab_map(A, B, tol), tol);
  } catch (const Error& e) {
    rep.status = SolveStatus::numerical_failure;
    note(std::string("Hill extraction failed: ") + e.what());
    return rep;
  }
  rep.hill_pick = hill.H();
  rep.m = hill.m();
  const Vector hev = symmetric_eigenvalues(hill.H());
  const double hmin = hev.size() ? hev(0) : 0.0;
  const double floor = psd_floor(hill.H(), tol);
  note("lambda_min(Hill-Pick) = " + std::to_string(hmin));

  if (rep.m < rep.m_max) {
    rep.status = SolveStatus::not_suboptimal;
    note("rank " + std::to_string(rep.m) + " < m_max " + std::to_string(rep.m_max));
    if (hmin < -floor) note("Hill-Pick matrix is indefinite: the map is not completely positive");
    return rep;
  }
  if (rep.m > rep.m_max) {
    rep.status = SolveStatus::numerical_failure;
    note("rank exceeds m_max; tolerances inconsistent");
    return rep;
  }
  if (hmin < -floor) {
    rep.status = SolveStatus::infeasible;
    return rep;
  }
  if (hmin <= floor) {
    rep.status = SolveStatus::numerical_failure;
    note("Hill-Pick matrix numerically singular");
    return rep;
  }

  try {
    const PencilPair pencils = build_pencils(A, B, hill, standard_collection(A.rows()), tol);
    const SkewFit fit = fit_skew(pencils, tol);
    rep.skew_residual = fit.residual;
    if (fit.residual > fit.threshold) {
      rep.status = SolveStatus::numerical_failure;
      note("skew solve residual above " + std::to_string(fit.threshold));
      return rep;
    }
    rep.realization = extract_realization(fit.S);
    const Matrix fA = eval_matrix(*rep.realization, A, tol);
    rep.interp_residual = (fA - B).norm();
  } catch (const Error& e) {
    rep.status = SolveStatus::numerical_failure;
    note(std::string("construction failed: ") + e.what());
    return rep;
  }
  rep.status = *rep.interp_residual <= tol.residual_abs * (1.0 + B.norm())
                   ? SolveStatus::solved
                   : SolveStatus::numerical_failure;
  if (rep.status != SolveStatus::solved) note("f(A) does not reproduce B to tolerance");
  return rep;
}

}  // namespace pronp
