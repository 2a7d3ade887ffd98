#include "metrics.hpp"

namespace atgm {

double accuracy(const Matching& found, const Matching& truth) {
  require(found.size() == truth.size(), errc::dimension_mismatch,
          "accuracy: matchings cover different source counts");
  require(found.size() > 0, errc::invalid_argument, "accuracy: empty matchings");
  int hits = 0;
  for (int i = 0; i < found.size(); ++i) {
    if (found.target_of[i] == truth.target_of[i]) ++hits;
  }
  return static_cast<double>(hits) / found.size();
}

double sparsity_index(const Matrix& p, double r) {
  require(r > 0.5 && r <= 1.0, errc::invalid_argument, "sparsity_index: r must be in (0.5, 1]");
  require(p.rows() >= 1, errc::shape, "sparsity_index: empty matrix");
  int qualifying = 0;
  for (int i = 0; i < p.rows(); ++i) {
    if (p.row(i).maxCoeff() >= r) ++qualifying;
  }
  return static_cast<double>(qualifying) / p.rows();
}

}  // namespace atgm
