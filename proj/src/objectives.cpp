#include "objectives.hpp"

#include <cmath>
#include <numbers>

#include "graph_ops.hpp"

namespace atgm {

namespace {

// Dense |a_i - b_j| with the usual squared-norm expansion; clamped at zero
// before the root to absorb rounding on near-coincident rows.
Matrix cross_distances(const Matrix& a, const Matrix& b) {
  Vector sa = a.rowwise().squaredNorm();
  Vector sb = b.rowwise().squaredNorm();
  Matrix d2 = sa.replicate(1, b.rows()) + sb.transpose().replicate(a.rows(), 1) -
              2.0 * (a * b.transpose());
  return d2.cwiseMax(0.0).cwiseSqrt();
}

}  // namespace

Matrix distance_matrix(const PointSet& a, const PointSet& b) {
  check_points(a, "distance_matrix");
  check_points(b, "distance_matrix");
  require(a.dim() == b.dim(), errc::dimension_mismatch,
          "distance_matrix: point sets differ in dimension");
  return cross_distances(a.coords, b.coords);
}

namespace {

constexpr int kAngularBins = 12;
constexpr int kRadialBins = 5;
constexpr double kInnerRadiusFactor = 0.125;
constexpr double kOuterRadiusFactor = 2.0;

// Row i: node i's normalized log-polar histogram over the other nodes.
Matrix context_histograms(const PointSet& ps) {
  int m = ps.count();
  require(m >= 2, errc::invalid_argument, "shape_context_cost: need at least 2 points");
  const Matrix& c = ps.coords;

  Matrix dist = pairwise_distances(ps);
  double mean = dist.sum() / (static_cast<double>(m) * (m - 1));
  require(mean > 0.0, errc::degenerate_input, "shape_context_cost: all points coincide");

  double r_in = kInnerRadiusFactor * mean;
  double r_out = kOuterRadiusFactor * mean;
  double log_span = std::log(r_out / r_in);
  double sector = 2.0 * std::numbers::pi / kAngularBins;

  Matrix h = Matrix::Zero(m, kAngularBins * kRadialBins);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      double r = dist(i, j);
      if (r > r_out) continue;
      int kr = 0;
      if (r > r_in) {
        kr = std::min(kRadialBins - 1,
                      static_cast<int>(kRadialBins * std::log(r / r_in) / log_span));
      }
      double a = std::atan2(c(j, 1) - c(i, 1), c(j, 0) - c(i, 0));
      if (a < 0.0) a += 2.0 * std::numbers::pi;
      int ka = std::min(kAngularBins - 1, static_cast<int>(a / sector));
      h(i, kr * kAngularBins + ka) += 1.0;
    }
    double total = h.row(i).sum();
    if (total > 0.0) h.row(i) /= total;
  }
  return h;
}

}  // namespace

Matrix shape_context_cost(const PointSet& x, const PointSet& y) {
  require(x.dim() == 2 && y.dim() == 2, errc::unsupported_dimension,
          "shape_context_cost: points must be 2-d");
  Matrix hx = context_histograms(x);
  Matrix hy = context_histograms(y);

  Matrix cost(x.count(), y.count());
  for (int i = 0; i < hx.rows(); ++i) {
    for (int j = 0; j < hy.rows(); ++j) {
      double acc = 0.0;
      for (int k = 0; k < hx.cols(); ++k) {
        double denom = hx(i, k) + hy(j, k);
        if (denom == 0.0) continue;
        double diff = hx(i, k) - hy(j, k);
        acc += diff * diff / denom;
      }
      cost(i, j) = 0.5 * acc;
    }
  }
  return cost;
}

EdgeDiscrepancyObjective::EdgeDiscrepancyObjective(const GraphInstance& gx, const PointSet& y,
                                                   Matrix unary, double lambda, double epsilon)
    : y_(y.coords),
      unary_(std::move(unary)),
      weights_(gx.weights.weights),
      lambda_(lambda),
      epsilon_(epsilon) {
  int m = gx.points.count();
  require(gx.points.dim() == y.dim(), errc::dimension_mismatch,
          "edge objective: source and target dimensions differ");
  require(weights_.rows() == m && weights_.cols() == m, errc::shape,
          "edge objective: weight matrix must be square over the source nodes");
  require(unary_.rows() == m && unary_.cols() == y.count(), errc::shape,
          "edge objective: unary cost must be sources x targets");
  require(epsilon_ > 0.0, errc::invalid_argument, "edge objective: epsilon must be positive");

  lengths_ = Matrix::Zero(m, m);
  Matrix dist = pairwise_distances(gx.points);
  for (auto [i, j] : gx.edges.edges) {
    lengths_(i, j) = lengths_(j, i) = dist(i, j);
  }
  lap_ = laplacian(gx.weights);
}

void EdgeDiscrepancyObjective::check_shape(const Matrix& p) const {
  require(p.rows() == unary_.rows() && p.cols() == unary_.cols(), errc::shape,
          "edge objective: assignment has wrong shape");
}

double EdgeDiscrepancyObjective::value(const Matrix& p) const {
  check_shape(p);
  Matrix xbar = p * y_;
  Matrix r = cross_distances(xbar, xbar);
  double pairwise = (weights_.array() * (lengths_ - r).array().square()).sum();
  return (unary_.array() * p.array()).sum() + lambda_ * pairwise;
}

ObjectiveEval EdgeDiscrepancyObjective::eval(const Matrix& p) const {
  check_shape(p);
  Matrix xbar = p * y_;
  Matrix r = cross_distances(xbar, xbar);

  double pairwise = (weights_.array() * (lengths_ - r).array().square()).sum();

  // Length-matched surrogate weights: S* = S .* l ./ (r + eps). The pairwise
  // gradient in Xbar is 4 (L_S - L_S*) Xbar; rows of Xbar that coincide
  // contribute exactly zero through both laplacians.
  Matrix sstar = (weights_.array() * lengths_.array() / (r.array() + epsilon_)).matrix();
  Vector deg = sstar.rowwise().sum();
  Matrix a = lap_ * xbar - (deg.asDiagonal() * xbar - sstar * xbar);

  ObjectiveEval out;
  out.value = (unary_.array() * p.array()).sum() + lambda_ * pairwise;
  out.gradient = unary_ + 4.0 * lambda_ * (a * y_.transpose());
  return out;
}

ShiftObjective::ShiftObjective(PointSet anchor, const PointSet& y, const EdgeWeights& weights,
                               Matrix unary, double lambda1, double lambda2)
    : anchor_(std::move(anchor.coords)),
      y_(y.coords),
      unary_(std::move(unary)),
      lambda1_(lambda1),
      lambda2_(lambda2) {
  int m = static_cast<int>(anchor_.rows());
  require(anchor_.cols() == y_.cols(), errc::dimension_mismatch,
          "shift objective: anchor and target dimensions differ");
  require(weights.weights.rows() == m && weights.weights.cols() == m, errc::shape,
          "shift objective: weight matrix must be square over the anchor nodes");
  require(unary_.rows() == m && unary_.cols() == y_.rows(), errc::shape,
          "shift objective: unary cost must be sources x targets");
  lap_ = laplacian(weights);
}

void ShiftObjective::check_shape(const Matrix& p) const {
  require(p.rows() == unary_.rows() && p.cols() == unary_.cols(), errc::shape,
          "shift objective: assignment has wrong shape");
}

double ShiftObjective::value(const Matrix& p) const {
  check_shape(p);
  Matrix z = p * y_ - anchor_;
  double smooth = 2.0 * (z.array() * (lap_ * z).array()).sum();
  return (unary_.array() * p.array()).sum() + lambda1_ * p.sum() + lambda2_ * smooth;
}

ObjectiveEval ShiftObjective::eval(const Matrix& p) const {
  check_shape(p);
  Matrix z = p * y_ - anchor_;
  Matrix lz = lap_ * z;

  ObjectiveEval out;
  out.value = (unary_.array() * p.array()).sum() + lambda1_ * p.sum() +
              lambda2_ * 2.0 * (z.array() * lz.array()).sum();
  out.gradient =
      (unary_.array() + lambda1_).matrix() + 4.0 * lambda2_ * (lz * y_.transpose());
  return out;
}

namespace {

// Undirected edge direction folded into (-pi/2, pi/2].
double edge_angle(double dx, double dy) {
  double a = std::atan2(dy, dx);
  if (a > 0.5 * std::numbers::pi) a -= std::numbers::pi;
  if (a <= -0.5 * std::numbers::pi) a += std::numbers::pi;
  return a;
}

}  // namespace

Matrix affinity_matrix(const PointSet& x, const PointSet& y, AffinityKind kind, double scale,
                       const Matrix* unary) {
  check_points(x, "affinity_matrix");
  check_points(y, "affinity_matrix");
  require(x.dim() == y.dim(), errc::dimension_mismatch,
          "affinity_matrix: point sets differ in dimension");
  require(scale > 0.0, errc::invalid_argument, "affinity_matrix: scale must be positive");
  require(kind == AffinityKind::length_only || x.dim() == 2, errc::unsupported_dimension,
          "affinity_matrix: angle-length affinity needs 2-d points");
  int m = x.count(), n = y.count();
  require(static_cast<long long>(m) * n <= 2500, errc::capacity,
          "affinity_matrix: m*n exceeds the 2500-assignment limit");
  if (unary) {
    require(unary->rows() == m && unary->cols() == n, errc::shape,
            "affinity_matrix: unary matrix must be sources x targets");
  }

  int mn = m * n;
  Matrix w = Matrix::Zero(mn, mn);
  for (int j1 = 0; j1 < n; ++j1) {
    for (int i1 = 0; i1 < m; ++i1) {
      int u = j1 * m + i1;
      if (unary) w(u, u) = (*unary)(i1, j1);
      for (int j2 = 0; j2 < n; ++j2) {
        for (int i2 = 0; i2 < m; ++i2) {
          if (i1 == i2 || j1 == j2) continue;
          int v = j2 * m + i2;
          double lx = (x.coords.row(i1) - x.coords.row(i2)).norm();
          double ly = (y.coords.row(j1) - y.coords.row(j2)).norm();
          double dl = lx - ly;
          if (kind == AffinityKind::length_only) {
            w(u, v) = std::exp(-dl * dl / scale);
          } else {
            double ax = edge_angle(x.coords(i2, 0) - x.coords(i1, 0),
                                   x.coords(i2, 1) - x.coords(i1, 1));
            double ay = edge_angle(y.coords(j2, 0) - y.coords(j1, 0),
                                   y.coords(j2, 1) - y.coords(j1, 1));
            double da = std::abs(ax - ay);
            da = std::min(da, std::numbers::pi - da);
            w(u, v) = std::exp(-0.5 * (dl * dl + da * da));
          }
        }
      }
    }
  }
  return w;
}

}  // namespace atgm
