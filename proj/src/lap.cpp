#include "lap.hpp"

#include <limits>
#include <vector>

namespace atgm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_cost(const Matrix& cost, const char* who) {
  require(cost.rows() >= 1, errc::shape, std::string(who) + ": empty cost matrix");
  require(cost.rows() <= cost.cols(), errc::shape,
          std::string(who) + ": need rows <= columns");
  require(cost.allFinite(), errc::invalid_argument,
          std::string(who) + ": non-finite cost entry");
}

}  // namespace

LapResult solve_lap(const Matrix& cost) {
  check_cost(cost, "solve_lap");
  int m = static_cast<int>(cost.rows());
  int n = static_cast<int>(cost.cols());

  // Row-major copy keeps the inner column scan contiguous.
  std::vector<double> c(static_cast<size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) c[static_cast<size_t>(i) * n + j] = cost(i, j);
  }

  std::vector<double> u(m, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> matched_row(n + 1, -1), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (int i = 0; i < m; ++i) {
    matched_row[n] = i;
    int j0 = n;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      int i0 = matched_row[j0];
      const double* row = &c[static_cast<size_t>(i0) * n];
      double ui = u[i0];
      double delta = kInf;
      int j1 = -1;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        double cur = row[j] - ui - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          if (matched_row[j] >= 0) u[matched_row[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (matched_row[j0] != -1);
    do {
      int j1 = way[j0];
      matched_row[j0] = matched_row[j1];
      j0 = j1;
    } while (j0 != n);
  }

  LapResult out;
  out.assignment.target_of.assign(m, -1);
  for (int j = 0; j < n; ++j) {
    if (matched_row[j] >= 0) out.assignment.target_of[matched_row[j]] = j;
  }
  for (int i = 0; i < m; ++i) out.cost += cost(i, out.assignment.target_of[i]);
  check_matching(out.assignment, n, "solve_lap");
  return out;
}

namespace {

void search(const Matrix& cost, int i, double partial, std::vector<char>& col_used,
            std::vector<int>& current, std::vector<int>& best, double& best_cost) {
  int m = static_cast<int>(cost.rows());
  int n = static_cast<int>(cost.cols());
  if (i == m) {
    // Strict improvement only: the first optimum in depth-first order is the
    // lexicographically least, so later ties never replace it.
    if (partial < best_cost) {
      best_cost = partial;
      best = current;
    }
    return;
  }
  for (int j = 0; j < n; ++j) {
    if (col_used[j]) continue;
    col_used[j] = 1;
    current[i] = j;
    search(cost, i + 1, partial + cost(i, j), col_used, current, best, best_cost);
    col_used[j] = 0;
  }
}

}  // namespace

LapResult brute_force_lap(const Matrix& cost) {
  check_cost(cost, "brute_force_lap");
  int m = static_cast<int>(cost.rows());
  int n = static_cast<int>(cost.cols());
  require(n <= 8, errc::capacity, "brute_force_lap: more than 8 columns");

  std::vector<char> col_used(n, 0);
  std::vector<int> current(m, -1), best;
  double best_cost = kInf;
  search(cost, 0, 0.0, col_used, current, best, best_cost);

  LapResult out;
  out.assignment.target_of = best;
  out.cost = best_cost;
  check_matching(out.assignment, n, "brute_force_lap");
  return out;
}

}  // namespace atgm
