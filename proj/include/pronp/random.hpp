// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

#include "pronp/matrix_kit.hpp"

namespace pronp {

using Rng = std::mt19937_64;

/// Independent stream for trial `trial` of a run seeded with `seed`. Streams
/// depend only on (seed, trial), so trials may run in any order or thread.
inline Rng trial_stream(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32), 0x9e3779b9u};
  return Rng(seq);
}

inline Matrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix G(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) G(i, j) = normal(rng);
  }
  return G;
}

inline Vector gaussian_vector(Index n, Rng& rng) {
  return gaussian_matrix(n, 1, rng).col(0);
}

inline Vector unit_vector_sample(Index n, Rng& rng) {
  Vector v = gaussian_vector(n, rng);
  const double nrm = v.norm();
  return nrm > 0.0 ? Vector(v / nrm) : Vector(Vector::Unit(n, 0));
}

inline Matrix skew_sample(Index n, Rng& rng) {
  const Matrix G = gaussian_matrix(n, n, rng);
  return G - G.transpose();
}

}  // namespace pronp
