// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

// Start from a known PRO function g, set B = g(A) for a random A with
// positive spectrum, and recover an interpolant from (A, B) alone.

#include <iostream>

#include "pronp/pronp.hpp"

int main() {
  using namespace pronp;
  const Index n = 3;
  Rng rng = trial_stream(2026, 0);
  const Matrix T = gaussian_matrix(n, n, rng) + 3 * Matrix::Identity(n, n);
  const Vector d = (Vector(n) << 0.5, 1.25, 3.0).finished();
  const Matrix A = T * d.asDiagonal() * T.inverse();
  const ProRealization g =
      ProRealization::from_dense(gaussian_vector(n, rng).transpose(), skew_sample(n, rng));
  const Matrix B = eval_matrix(g, A);

  const SolveReport r = solve(A, B);
  std::cout << "status: " << to_string(r.status) << "  m=" << r.m << " m_max=" << r.m_max << '\n';
  if (!r.realization) return 1;
  std::cout << "|f(A) - B|_F = " << *r.interp_residual << '\n';
  for (double z : {0.5, 1.25, 3.0, 10.0}) {
    std::cout << "z=" << z << "  f=" << eval_scalar(*r.realization, z) << "  g=" << eval_scalar(g, z)
              << '\n';
  }
}
