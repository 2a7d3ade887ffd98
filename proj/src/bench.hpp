#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "objectives.hpp"
#include "pipeline.hpp"
#include "spectral.hpp"
#include "types.hpp"

namespace atgm {

struct SyntheticSpec {
  int inliers = 0;
  int outliers = 0;
  double sigma = 0.0;
  uint64_t seed = 0;
};

struct SyntheticInstance {
  PointSet x;
  PointSet y;
  Matching truth;  // source i -> shuffled position of its noisy copy
};

// Standard-normal 2-d inliers; targets are noisy copies plus standard-normal
// outliers, shuffled by a seeded permutation. Identical seeds reproduce the
// instance bit-for-bit on any platform.
SyntheticInstance gen_synthetic(const SyntheticSpec& spec);

enum class Method { atgm, spectral };

const char* method_name(Method m);

struct SweepCell {
  int inliers = 0;
  int outliers = 0;
  double sigma = 0.0;
};

struct SweepRequest {
  std::vector<SweepCell> cells;
  int trials = 10;
  uint64_t seed = 0;
  std::vector<Method> methods = {Method::atgm};
  bool removal_preprocess = false;
  AtgmConfig config;
  AffinityKind affinity = AffinityKind::length_only;
  double affinity_scale = 0.15;
  SpectralConfig spectral;
};

struct TrialRow {
  int cell = 0;
  SweepCell params;
  Method method = Method::atgm;
  int trial = 0;
  uint64_t seed = 0;
  bool failed = false;
  std::string error;
  double accuracy = 0.0;
  double sparsity = 0.0;  // NaN where the method has no soft assignment
  double wall_time = 0.0;
};

struct CellSummary {
  int cell = 0;
  SweepCell params;
  Method method = Method::atgm;
  int trials_ok = 0;
  int trials_failed = 0;
  double mean_accuracy = 0.0;
  double mean_sparsity = 0.0;
  double mean_wall_time = 0.0;
};

struct SweepResults {
  std::vector<TrialRow> rows;
  std::vector<CellSummary> cells;
};

// Per-trial failures are recorded in their rows, never thrown. Trial seeds
// derive from (seed, cell, trial), so every method sees the same instances.
SweepResults run_sweep(const SweepRequest& req);

std::string sweep_csv(const SweepResults& results);

}  // namespace atgm
