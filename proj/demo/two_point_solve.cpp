// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

// Find a PRO function with f(1) = 2 and f(2) = 3 by interpolating at
// A = diag(1, 2), then show the gate outcomes for two nearby targets.

#include <iostream>

#include "pronp/pronp.hpp"

int main() {
  using namespace pronp;
  Matrix A = Matrix::Zero(2, 2);
  A.diagonal() << 1, 2;

  for (const auto& [b1, b2] : {std::pair{2.0, 3.0}, std::pair{1.0, 3.0}, std::pair{2.0, 1.0}}) {
    Matrix B = Matrix::Zero(2, 2);
    B.diagonal() << b1, b2;
    const SolveReport r = solve(A, B);
    std::cout << "target (" << b1 << ", " << b2 << "): " << to_string(r.status) << "  m=" << r.m
              << " m_max=" << r.m_max << '\n';
    if (r.realization) {
      for (double z : {1.0, 2.0, 4.0}) {
        std::cout << "  f(" << z << ") = " << eval_scalar(*r.realization, z) << '\n';
      }
    }
  }
}
