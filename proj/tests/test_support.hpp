#pragma once

#include <initializer_list>
#include <numeric>
#include <optional>
#include <vector>

#include "error.hpp"
#include "objectives.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace atgm::test {

inline PointSet make_points(std::initializer_list<std::initializer_list<double>> rows) {
  PointSet ps;
  int m = static_cast<int>(rows.size());
  int d = static_cast<int>(rows.begin()->size());
  ps.coords.resize(m, d);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) ps.coords(i, j++) = v;
    ++i;
  }
  return ps;
}

inline PointSet random_points(int count, Rng& rng, int dim = 2) {
  PointSet ps;
  ps.coords.resize(count, dim);
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < dim; ++j) ps.coords(i, j) = rng.uniform01();
  }
  return ps;
}

template <typename Fn>
std::optional<errc> error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline Matching random_injective(int m, int n, Rng& rng) {
  std::vector<int> cols(n);
  std::iota(cols.begin(), cols.end(), 0);
  rng.shuffle(cols);
  Matching out;
  out.target_of.assign(cols.begin(), cols.begin() + m);
  return out;
}

// Strictly positive entries: halfway between the barycenter and a vertex.
inline Matrix interior_point(int m, int n, Rng& rng) {
  return 0.5 * uniform_assignment(m, n) +
         0.5 * matching_matrix(random_injective(m, n, rng), n);
}

inline Matrix fd_gradient(const Objective& f, const Matrix& p, double h = 1e-6) {
  Matrix g(p.rows(), p.cols());
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.cols(); ++j) {
      Matrix hi = p, lo = p;
      hi(i, j) += h;
      lo(i, j) -= h;
      g(i, j) = (f.value(hi) - f.value(lo)) / (2.0 * h);
    }
  }
  return g;
}

inline double gradient_rel_error(const Objective& f, const Matrix& p, double h = 1e-6) {
  ObjectiveEval e = f.eval(p);
  Matrix fd = fd_gradient(f, p, h);
  return (fd - e.gradient).cwiseAbs().maxCoeff() / (1.0 + e.gradient.cwiseAbs().maxCoeff());
}

inline bool nonincreasing(const std::vector<double>& v) {
  for (size_t k = 1; k < v.size(); ++k) {
    if (v[k] > v[k - 1] + 1e-12 * (1.0 + std::abs(v[k - 1]))) return false;
  }
  return true;
}

}  // namespace atgm::test
