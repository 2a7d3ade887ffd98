#pragma once

#include <vector>

#include "objectives.hpp"
#include "types.hpp"

namespace atgm {

enum class FwMode { convex, nonconvex };

struct FwConfig {
  int max_iters = 100;
  double rel_tol = 1e-7;
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  int armijo_max_shrinks = 60;
  bool validate_iterates = false;
  bool record_lap_solutions = false;
};

struct FwTrace {
  std::vector<double> values;  // objective per iterate, starting point first
  std::vector<double> steps;   // accepted step length per iteration
  std::vector<double> gaps;    // linearization gap before each step
};

struct FwResult {
  Matrix assignment;
  FwTrace trace;
  double final_value = 0.0;
  // <grad, P - Ptilde> at the returned point: upper-bounds the suboptimality
  // in the convex case.
  double final_gap = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<Matching> lap_solutions;  // filled when record_lap_solutions
};

// Best vertex of the relaxed-assignment polytope for the linearized
// objective: a 0/1 matrix picking the assignment problem's solution.
Matrix linearized_step(const Matrix& gradient);

// Minimizer of a quadratic phi along p + t (q - p), clamped to [0, 1].
// slope = phi'(0) must come from the caller's gradient.
double line_search_exact_quadratic(const Objective& f, const Matrix& p, const Matrix& q,
                                   double value_at_p, double slope);

// Armijo backtracking from t = 1; returns 0 when no acceptable step exists.
double line_search_backtracking(const Objective& f, const Matrix& p, const Matrix& q,
                                double value_at_p, double slope, const FwConfig& cfg);

FwResult minimize(const Objective& f, const Matrix& p0, FwMode mode, const FwConfig& cfg);

}  // namespace atgm
