#pragma once

#include "types.hpp"

namespace atgm {

struct ObjectiveEval {
  double value = 0.0;
  Matrix gradient;
};

// Differentiable objective over relaxed assignments; what the solver consumes.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual ObjectiveEval eval(const Matrix& p) const = 0;
  virtual double value(const Matrix& p) const { return eval(p).value; }
  // Value contribution that is constant on the feasible polytope (the l1
  // penalty: row sums are fixed). Excluded from relative stopping scales so
  // termination does not depend on it.
  virtual double constant_offset() const { return 0.0; }
};

Matrix distance_matrix(const PointSet& a, const PointSet& b);

// Log-polar histogram (12 angular x 5 radial bins, radial edges log-spaced
// over [0.125, 2] times the set's mean pairwise distance) per node, compared
// across sets with the chi-squared distance, halved; entries land in [0, 1].
Matrix shape_context_cost(const PointSet& x, const PointSet& y);

// Unary cost + lambda * sum over ordered edge pairs of
// S_ab * (|X_a - X_b| - |Xbar_a - Xbar_b|)^2 with Xbar = P Y.
class EdgeDiscrepancyObjective : public Objective {
 public:
  EdgeDiscrepancyObjective(const GraphInstance& gx, const PointSet& y, Matrix unary,
                           double lambda, double epsilon);

  ObjectiveEval eval(const Matrix& p) const override;
  double value(const Matrix& p) const override;

 private:
  void check_shape(const Matrix& p) const;

  Matrix y_;
  Matrix unary_;
  Matrix weights_;       // S, dense symmetric, zero off support
  Matrix lengths_;       // source edge lengths on the support, else 0
  Matrix lap_;           // laplacian of S
  double lambda_;
  double epsilon_;
};

// Unary cost + l1 penalty + lambda2 * sum over ordered pairs of
// S_ab * |(PY - A)_a - (PY - A)_b|^2; convex in P.
class ShiftObjective : public Objective {
 public:
  ShiftObjective(PointSet anchor, const PointSet& y, const EdgeWeights& weights, Matrix unary,
                 double lambda1, double lambda2);

  ObjectiveEval eval(const Matrix& p) const override;
  double value(const Matrix& p) const override;
  double constant_offset() const override { return lambda1_ * anchor_.rows(); }

 private:
  void check_shape(const Matrix& p) const;

  Matrix anchor_;
  Matrix y_;
  Matrix lap_;
  Matrix unary_;
  double lambda1_;
  double lambda2_;
};

enum class AffinityKind { angle_length, length_only };

// Pairwise compatibility of candidate assignments (i1->j1, i2->j2), laid out
// with assignment (i, j) at flat index j * m + i (column-major over the
// relaxed assignment matrix). Assignments sharing exactly one endpoint get 0;
// the diagonal carries node affinities when `unary` is supplied, else 0.
Matrix affinity_matrix(const PointSet& x, const PointSet& y, AffinityKind kind, double scale,
                       const Matrix* unary = nullptr);

}  // namespace atgm
