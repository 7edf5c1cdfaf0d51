// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

// Interpolating at a Jordan block prescribes a value and a derivative:
// f(J_2(1)) = [[2, 1], [0, 2]] means f(1) = 2 and f'(1) = 1.

#include <iostream>

#include "pronp/pronp.hpp"

int main() {
  using namespace pronp;
  Matrix A(2, 2), B(2, 2);
  A << 1, 1, 0, 1;
  B << 2, 1, 0, 2;
  const SolveReport r = solve(A, B);
  std::cout << "status: " << to_string(r.status) << '\n';
  if (!r.realization) return 1;
  const ProRealization& f = *r.realization;
  const double h = 1e-6;
  std::cout << "f(1)  = " << eval_scalar(f, 1.0) << '\n'
            << "f'(1) ~ " << (eval_scalar(f, 1.0 + h) - eval_scalar(f, 1.0 - h)) / (2 * h) << '\n'
            << "f(A) =\n" << eval_matrix(f, A) << '\n';
  std::cout << io::realization_to_json(f).dump() << '\n';
}
