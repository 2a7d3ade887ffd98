#pragma once

#include "types.hpp"

namespace atgm {

struct LapResult {
  Matching assignment;
  double cost = 0.0;
};

// Minimum-cost injective row->column assignment (rows <= columns) via
// shortest augmenting paths on dual potentials; deterministic scan order.
LapResult solve_lap(const Matrix& cost);

// Exhaustive reference; refuses more than 8 columns. Among equal-cost optima
// it returns the lexicographically smallest row->column map.
LapResult brute_force_lap(const Matrix& cost);

}  // namespace atgm
