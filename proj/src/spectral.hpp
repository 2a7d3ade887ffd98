#pragma once

#include <utility>

#include "types.hpp"

namespace atgm {

struct SpectralConfig {
  bool hungarian_readout = false;
  int max_iters = 1000;
  double tol = 1e-10;
};

struct SpectralResult {
  Matching matching;
  Vector principal;  // unit norm, entrywise non-negative
  double qap_score = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Pair-affinity objective of a matching: sum of w over all (assignment,
// assignment) index pairs, diagonal included. Assignment (i, j) lives at
// flat index j * m + i.
double qap_score(const Matrix& w, const Matching& matching, int m, int n);

// Principal eigenvector by power iteration, then greedy peak-picking (or an
// assignment solve when configured). w must be non-negative, (m n) x (m n).
SpectralResult spectral_match(const Matrix& w, int m, int n, const SpectralConfig& cfg = {});

// Exhaustive maximum of the pair-affinity objective; sources capped at 7.
std::pair<Matching, double> brute_force_qap(const Matrix& w, int m, int n);

}  // namespace atgm
