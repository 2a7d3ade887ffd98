#include "spectral.hpp"

#include <cmath>

#include "lap.hpp"

namespace atgm {

namespace {

void check_affinity(const Matrix& w, int m, int n, const char* who) {
  require(m >= 1 && m <= n, errc::shape, std::string(who) + ": need 1 <= sources <= targets");
  long long mn = static_cast<long long>(m) * n;
  require(mn <= 2500, errc::capacity,
          std::string(who) + ": m*n exceeds the 2500-assignment limit");
  require(w.rows() == mn && w.cols() == mn, errc::shape,
          std::string(who) + ": affinity matrix must be (m n) x (m n)");
  require(w.allFinite() && w.minCoeff() >= 0.0, errc::invalid_argument,
          std::string(who) + ": affinities must be finite and non-negative");
}

}  // namespace

double qap_score(const Matrix& w, const Matching& matching, int m, int n) {
  check_affinity(w, m, n, "qap_score");
  require(matching.size() == m, errc::dimension_mismatch,
          "qap_score: matching does not cover the sources");
  check_matching(matching, n, "qap_score");
  double score = 0.0;
  for (int i1 = 0; i1 < m; ++i1) {
    int u = matching.target_of[i1] * m + i1;
    for (int i2 = 0; i2 < m; ++i2) {
      int v = matching.target_of[i2] * m + i2;
      score += w(u, v);
    }
  }
  return score;
}

SpectralResult spectral_match(const Matrix& w, int m, int n, const SpectralConfig& cfg) {
  check_affinity(w, m, n, "spectral_match");
  require(cfg.max_iters >= 1 && cfg.tol > 0.0, errc::invalid_argument,
          "spectral_match: bad power-iteration settings");
  int mn = m * n;

  SpectralResult out;
  Vector v = Vector::Constant(mn, 1.0 / std::sqrt(static_cast<double>(mn)));
  for (int it = 1; it <= cfg.max_iters; ++it) {
    out.iterations = it;
    Vector wv = w * v;
    double norm = wv.norm();
    if (norm == 0.0) {  // degenerate but well-defined: keep the uniform vector
      out.converged = true;
      break;
    }
    wv /= norm;
    double diff = (wv - v).norm();
    v = std::move(wv);
    if (diff < cfg.tol) {
      out.converged = true;
      break;
    }
  }
  out.principal = v;

  if (cfg.hungarian_readout) {
    Matrix scores(m, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) scores(i, j) = v[j * m + i];
    }
    out.matching = solve_lap(-scores).assignment;
  } else {
    // Greedy peaks: scan in flat-index order so ties resolve deterministically.
    out.matching.target_of.assign(m, -1);
    std::vector<char> row_used(m, 0), col_used(n, 0);
    for (int pick = 0; pick < m; ++pick) {
      int best = -1;
      double best_val = -1.0;
      for (int idx = 0; idx < mn; ++idx) {
        int i = idx % m, j = idx / m;
        if (row_used[i] || col_used[j]) continue;
        if (v[idx] > best_val) {
          best_val = v[idx];
          best = idx;
        }
      }
      int i = best % m, j = best / m;
      out.matching.target_of[i] = j;
      row_used[i] = 1;
      col_used[j] = 1;
    }
  }
  check_matching(out.matching, n, "spectral_match");
  out.qap_score = qap_score(w, out.matching, m, n);
  return out;
}

namespace {

void qap_search(const Matrix& w, int m, int n, int i, double partial, std::vector<int>& current,
                std::vector<char>& col_used, std::vector<int>& best, double& best_score) {
  if (i == m) {
    if (partial > best_score) {
      best_score = partial;
      best = current;
    }
    return;
  }
  for (int j = 0; j < n; ++j) {
    if (col_used[j]) continue;
    int u = j * m + i;
    double add = w(u, u);
    for (int k = 0; k < i; ++k) {
      int q = current[k] * m + k;
      add += w(q, u) + w(u, q);
    }
    col_used[j] = 1;
    current[i] = j;
    qap_search(w, m, n, i + 1, partial + add, current, col_used, best, best_score);
    col_used[j] = 0;
  }
}

}  // namespace

std::pair<Matching, double> brute_force_qap(const Matrix& w, int m, int n) {
  check_affinity(w, m, n, "brute_force_qap");
  require(m <= 7, errc::capacity, "brute_force_qap: more than 7 sources");

  std::vector<int> current(m, -1), best;
  std::vector<char> col_used(n, 0);
  double best_score = -1.0;
  qap_search(w, m, n, 0, 0.0, current, col_used, best, best_score);

  Matching matching;
  matching.target_of = best;
  check_matching(matching, n, "brute_force_qap");
  return {matching, best_score};
}

}  // namespace atgm
