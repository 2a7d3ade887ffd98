#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "error.hpp"

namespace atgm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// One node per row, coordinates across columns.
struct PointSet {
  Matrix coords;

  int count() const { return static_cast<int>(coords.rows()); }
  int dim() const { return static_cast<int>(coords.cols()); }
};

void check_points(const PointSet& ps, const char* who);

// Undirected simple edges, each stored once as (i, j) with i < j.
struct EdgeSet {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;

  int count() const { return static_cast<int>(edges.size()); }
};

void check_edges(const EdgeSet& es, const char* who);

// Symmetric nonnegative weights with zero diagonal; support equals the edge
// set of the instance that carries it.
struct EdgeWeights {
  Matrix weights;
};

struct GraphInstance {
  PointSet points;
  EdgeSet edges;
  EdgeWeights weights;
};

// Injective map from every source node to a target node.
struct Matching {
  std::vector<int> target_of;

  int size() const { return static_cast<int>(target_of.size()); }
};

bool is_injective(const Matching& m);
void check_matching(const Matching& m, int target_count, const char* who);

// Rows sum to 1, column sums stay <= 1, entries in [0, 1]; rectangular with
// at most as many rows as columns. Relaxation domain for the solvers.
using SoftAssignment = Matrix;

bool is_soft_assignment(const Matrix& p, double tol = 1e-9);
void check_soft_assignment(const Matrix& p, double tol, const char* who);

Matrix uniform_assignment(int m, int n);
Matrix matching_matrix(const Matching& m, int target_count);

}  // namespace atgm
