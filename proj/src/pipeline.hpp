#pragma once

#include <string>
#include <vector>

#include "fw.hpp"
#include "types.hpp"

namespace atgm {

enum class Connectivity { complete, delaunay };
enum class UnaryMode { shape_context, none };

// Quantifier used by the distance ratio test; keep_union retains a target
// within ratio_k of at least one source's best distance, keep_all_sources
// is the literal every-source reading.
enum class RemovalRule { keep_union, keep_all_sources };

struct AtgmConfig {
  double lambda = 1.0;
  double lambda1 = 1e3;
  double lambda2 = 1.0;
  double epsilon = 1e-8;
  double ratio_k = 1.5;
  int rounds = -1;  // -1: 2 when sources < targets, else 0
  Connectivity connectivity = Connectivity::complete;
  UnaryMode unary = UnaryMode::shape_context;
  RemovalRule removal = RemovalRule::keep_union;
  bool drop_unary_first_round = false;  // true: round-1 shift uses coherence alone
  bool final_shift_stage = true;  // false: stop after the edge stage (ablation)
  bool validate_iterates = false;
  FwConfig fw_shift;
  FwConfig fw_edge{.max_iters = 200, .rel_tol = 1e-9};
};

void check_config(const AtgmConfig& cfg);

struct RemovalState {
  std::vector<int> kept;     // sorted indices into the target set as given
  std::vector<int> history;  // kept count after each removal pass
};

RemovalState remove_outliers(const PointSet& xbar, const PointSet& y, double ratio_k,
                             int source_count, RemovalRule rule = RemovalRule::keep_union);

// Hard matching by maximum total soft mass.
Matching post_discretize(const Matrix& p);

struct StageReport {
  std::string name;
  FwMode mode = FwMode::convex;
  FwTrace trace;
  double final_value = 0.0;
  double final_gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct AtgmDiagnostics {
  std::vector<StageReport> stages;
  RemovalState removal;
  double sparsity = 0.0;  // S_0.9 of the final soft assignment
};

struct AtgmResult {
  Matching matching;       // original target indices
  Matching edge_matching;  // readout after the edge stage alone, original indices
  SoftAssignment soft;     // final soft map over the retained targets
  AtgmDiagnostics diagnostics;
};

// Full procedure: alternating shift/edge rounds with outlier removal, final
// edge solve, final anchored-shift solve from its solution, discretization.
AtgmResult match_graphs(const PointSet& x, const PointSet& y, const AtgmConfig& cfg);

// Only the removal rounds; kept indices refer to the target set as given.
RemovalState filter_outliers(const PointSet& x, const PointSet& y, const AtgmConfig& cfg);

}  // namespace atgm
