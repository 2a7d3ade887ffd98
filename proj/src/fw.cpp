#include "fw.hpp"

#include <cmath>
#include <string>

#include "lap.hpp"

namespace atgm {

Matrix linearized_step(const Matrix& gradient) {
  LapResult lr = solve_lap(gradient);
  return matching_matrix(lr.assignment, static_cast<int>(gradient.cols()));
}

double line_search_exact_quadratic(const Objective& f, const Matrix& p, const Matrix& q,
                                   double value_at_p, double slope) {
  if (slope >= 0.0) return 0.0;
  double value_at_q = f.value(p + (q - p));
  double curvature = value_at_q - value_at_p - slope;
  if (curvature <= 0.0) return 1.0;  // descending through t = 1
  return std::min(1.0, -slope / (2.0 * curvature));
}

double line_search_backtracking(const Objective& f, const Matrix& p, const Matrix& q,
                                double value_at_p, double slope, const FwConfig& cfg) {
  if (slope >= 0.0) return 0.0;
  Matrix dir = q - p;
  double t = 1.0;
  for (int k = 0; k <= cfg.armijo_max_shrinks; ++k) {
    if (f.value(p + t * dir) <= value_at_p + cfg.armijo_c * t * slope) return t;
    t *= cfg.armijo_shrink;
  }
  return 0.0;
}

FwResult minimize(const Objective& f, const Matrix& p0, FwMode mode, const FwConfig& cfg) {
  require(cfg.max_iters >= 1, errc::invalid_argument, "frank_wolfe: max_iters must be >= 1");
  check_soft_assignment(p0, 1e-9, "frank_wolfe: starting point");

  FwResult out;
  Matrix p = p0;
  ObjectiveEval e = f.eval(p);
  out.trace.values.push_back(e.value);

  // Stopping scales exclude the polytope-constant value part, keeping
  // termination invariant to it (the LAP direction, gap, and line search
  // already are).
  const double offset = f.constant_offset();
  bool have_gap = false;
  for (int it = 0; it < cfg.max_iters; ++it) {
    require(std::isfinite(e.value) && e.gradient.allFinite(), errc::numeric,
            "frank_wolfe: non-finite objective or gradient at iteration " + std::to_string(it));

    LapResult lr = solve_lap(e.gradient);
    if (cfg.record_lap_solutions) out.lap_solutions.push_back(lr.assignment);
    Matrix vertex = matching_matrix(lr.assignment, static_cast<int>(p.cols()));

    double gap = (e.gradient.array() * (p - vertex).array()).sum();
    double scale = 1.0 + std::abs(e.value - offset);
    out.trace.gaps.push_back(gap);
    if (gap <= cfg.rel_tol * scale) {
      out.final_gap = gap;
      have_gap = true;
      out.converged = true;
      break;
    }

    double slope = -gap;
    double t = mode == FwMode::convex
                   ? line_search_exact_quadratic(f, p, vertex, e.value, slope)
                   : line_search_backtracking(f, p, vertex, e.value, slope, cfg);
    if (t <= 0.0) {
      out.final_gap = gap;
      have_gap = true;
      break;  // no descent step available; leave converged unset
    }

    Matrix next = p + t * (vertex - p);
    if (cfg.validate_iterates) {
      check_soft_assignment(next, 1e-9, "frank_wolfe: iterate");
    }
    ObjectiveEval en = f.eval(next);
    if (en.value > e.value) {  // rounding pushed uphill; stop at the better point
      out.final_gap = gap;
      have_gap = true;
      break;
    }

    double decrease = e.value - en.value;
    p = std::move(next);
    e = std::move(en);
    out.trace.values.push_back(e.value);
    out.trace.steps.push_back(t);
    ++out.iterations;

    if (decrease <= cfg.rel_tol * (1.0 + std::abs(e.value - offset))) {
      out.converged = true;
      break;
    }
  }

  if (!have_gap) {
    // Certificate at the returned point (one extra assignment solve).
    LapResult lr = solve_lap(e.gradient);
    if (cfg.record_lap_solutions) out.lap_solutions.push_back(lr.assignment);
    Matrix vertex = matching_matrix(lr.assignment, static_cast<int>(p.cols()));
    out.final_gap = (e.gradient.array() * (p - vertex).array()).sum();
    if (out.final_gap <= cfg.rel_tol * (1.0 + std::abs(e.value - offset))) {
      out.converged = true;
    }
  }

  out.assignment = std::move(p);
  out.final_value = e.value;
  return out;
}

}  // namespace atgm
