#include "graph_ops.hpp"

#include <algorithm>
#include <cmath>

namespace atgm {

PointSet normalize_points(const PointSet& ps) {
  check_points(ps, "normalize_points");
  Eigen::RowVectorXd lo = ps.coords.colwise().minCoeff();
  Eigen::RowVectorXd hi = ps.coords.colwise().maxCoeff();
  double range = (hi - lo).maxCoeff();
  require(range > 0.0, errc::degenerate_input, "normalize_points: all points coincide");
  PointSet out;
  out.coords = (ps.coords.rowwise() - lo) / range;
  return out;
}

std::pair<PointSet, PointSet> normalize_jointly(const PointSet& x, const PointSet& y) {
  check_points(x, "normalize_jointly");
  check_points(y, "normalize_jointly");
  require(x.dim() == y.dim(), errc::dimension_mismatch,
          "normalize_jointly: point sets disagree on dimension");
  Eigen::RowVectorXd lo =
      x.coords.colwise().minCoeff().cwiseMin(y.coords.colwise().minCoeff());
  Eigen::RowVectorXd hi =
      x.coords.colwise().maxCoeff().cwiseMax(y.coords.colwise().maxCoeff());
  double range = (hi - lo).maxCoeff();
  require(range > 0.0, errc::degenerate_input, "normalize_jointly: all points coincide");
  std::pair<PointSet, PointSet> out;
  out.first.coords = (x.coords.rowwise() - lo) / range;
  out.second.coords = (y.coords.rowwise() - lo) / range;
  return out;
}

Matrix pairwise_distances(const PointSet& ps) {
  const Matrix& c = ps.coords;
  int m = ps.count();
  Vector sq = c.rowwise().squaredNorm();
  Matrix d2 = sq.replicate(1, m) + sq.transpose().replicate(m, 1) - 2.0 * (c * c.transpose());
  return d2.cwiseMax(0.0).cwiseSqrt();
}

GraphInstance complete_graph(const PointSet& ps) {
  check_points(ps, "complete_graph");
  int m = ps.count();
  require(m >= 2, errc::invalid_argument, "complete_graph: need at least 2 points");

  GraphInstance g;
  g.points = ps;
  g.edges.node_count = m;
  g.edges.edges.reserve(static_cast<size_t>(m) * (m - 1) / 2);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) g.edges.edges.emplace_back(i, j);
  }
  g.weights = inverse_length_weights(ps, g.edges);
  return g;
}

EdgeWeights inverse_length_weights(const PointSet& ps, const EdgeSet& es) {
  check_edges(es, "inverse_length_weights");
  require(es.node_count == ps.count(), errc::dimension_mismatch,
          "inverse_length_weights: edge set and point set disagree on node count");
  EdgeWeights w;
  w.weights = Matrix::Zero(ps.count(), ps.count());
  for (auto [i, j] : es.edges) {
    double len = (ps.coords.row(i) - ps.coords.row(j)).norm();
    require(len > 0.0, errc::degenerate_input,
            "inverse_length_weights: zero-length edge (coincident points)");
    w.weights(i, j) = w.weights(j, i) = 1.0 / len;
  }
  return w;
}

EdgeWeights unit_weights(const EdgeSet& es) {
  check_edges(es, "unit_weights");
  EdgeWeights w;
  w.weights = Matrix::Zero(es.node_count, es.node_count);
  for (auto [i, j] : es.edges) w.weights(i, j) = w.weights(j, i) = 1.0;
  return w;
}

EdgeSet prune_edges_kmeans(const EdgeSet& es, const PointSet& ps) {
  check_edges(es, "prune_edges_kmeans");
  require(es.node_count == ps.count(), errc::dimension_mismatch,
          "prune_edges_kmeans: edge set and point set disagree on node count");
  int ne = es.count();
  if (ne <= 1) return es;

  std::vector<double> len(ne);
  for (int e = 0; e < ne; ++e) {
    auto [i, j] = es.edges[e];
    len[e] = (ps.coords.row(i) - ps.coords.row(j)).norm();
  }

  double mean = 0.0;
  for (double l : len) mean += l;
  mean /= ne;
  double var = 0.0;
  for (double l : len) var += (l - mean) * (l - mean);
  var /= ne;
  if (var < 1e-12) return es;

  double lo = *std::min_element(len.begin(), len.end());
  double hi = *std::max_element(len.begin(), len.end());
  // Lloyd in 1-d: cluster membership is a threshold at the centroid midpoint,
  // ties go short. Variance > 0 keeps the two centroids distinct throughout.
  for (int pass = 0; pass < 100; ++pass) {
    double mid = 0.5 * (lo + hi);
    double sum_lo = 0.0, sum_hi = 0.0;
    int n_lo = 0, n_hi = 0;
    for (double l : len) {
      if (l <= mid) {
        sum_lo += l;
        ++n_lo;
      } else {
        sum_hi += l;
        ++n_hi;
      }
    }
    double new_lo = n_lo ? sum_lo / n_lo : lo;
    double new_hi = n_hi ? sum_hi / n_hi : hi;
    if (new_lo == lo && new_hi == hi) break;
    lo = new_lo;
    hi = new_hi;
  }

  double mid = 0.5 * (lo + hi);
  EdgeSet out;
  out.node_count = es.node_count;
  for (int e = 0; e < ne; ++e) {
    if (len[e] <= mid) out.edges.push_back(es.edges[e]);
  }
  return out;
}

Matrix laplacian(const EdgeWeights& w) {
  require(w.weights.rows() == w.weights.cols(), errc::shape, "laplacian: weights not square");
  Matrix l = -w.weights;
  l.diagonal() = w.weights.rowwise().sum();
  return l;
}

PointSet transform(const Matrix& p, const PointSet& y) {
  require(p.cols() == y.count(), errc::dimension_mismatch,
          "transform: assignment columns must equal target count");
  PointSet out;
  out.coords = p * y.coords;
  return out;
}

}  // namespace atgm
