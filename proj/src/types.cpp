#include "types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace atgm {

const char* errc_name(errc code) {
  switch (code) {
    case errc::invalid_argument: return "invalid_argument";
    case errc::degenerate_input: return "degenerate_input";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::unsupported_dimension: return "unsupported_dimension";
    case errc::shape: return "shape";
    case errc::capacity: return "capacity";
    case errc::numeric: return "numeric";
    case errc::parse: return "parse";
    case errc::io: return "io";
  }
  return "unknown";
}

void check_points(const PointSet& ps, const char* who) {
  require(ps.count() >= 1, errc::invalid_argument, std::string(who) + ": empty point set");
  require(ps.dim() >= 1, errc::invalid_argument, std::string(who) + ": zero-dimensional points");
  require(ps.coords.allFinite(), errc::invalid_argument,
          std::string(who) + ": non-finite coordinate");
}

void check_edges(const EdgeSet& es, const char* who) {
  for (auto [i, j] : es.edges) {
    require(0 <= i && i < j && j < es.node_count, errc::invalid_argument,
            std::string(who) + ": edge endpoints out of order or range");
  }
}

bool is_injective(const Matching& m) {
  std::vector<int> seen;
  seen.reserve(m.target_of.size());
  for (int t : m.target_of) {
    if (t < 0) return false;
    seen.push_back(t);
  }
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

void check_matching(const Matching& m, int target_count, const char* who) {
  for (int t : m.target_of) {
    require(0 <= t && t < target_count, errc::invalid_argument,
            std::string(who) + ": matched index out of range");
  }
  require(is_injective(m), errc::invalid_argument, std::string(who) + ": matching not injective");
}

bool is_soft_assignment(const Matrix& p, double tol) {
  if (p.rows() < 1 || p.rows() > p.cols()) return false;
  if (!p.allFinite()) return false;
  if (p.minCoeff() < -tol || p.maxCoeff() > 1.0 + tol) return false;
  for (int i = 0; i < p.rows(); ++i) {
    if (std::abs(p.row(i).sum() - 1.0) > tol) return false;
  }
  for (int j = 0; j < p.cols(); ++j) {
    if (p.col(j).sum() > 1.0 + tol) return false;
  }
  return true;
}

void check_soft_assignment(const Matrix& p, double tol, const char* who) {
  require(is_soft_assignment(p, tol), errc::numeric,
          std::string(who) + ": matrix violates the relaxed-assignment constraints");
}

Matrix uniform_assignment(int m, int n) {
  require(1 <= m && m <= n, errc::shape, "uniform_assignment: need 1 <= rows <= cols");
  return Matrix::Constant(m, n, 1.0 / n);
}

Matrix matching_matrix(const Matching& m, int target_count) {
  check_matching(m, target_count, "matching_matrix");
  Matrix p = Matrix::Zero(m.size(), target_count);
  for (int i = 0; i < m.size(); ++i) p(i, m.target_of[i]) = 1.0;
  return p;
}

}  // namespace atgm
