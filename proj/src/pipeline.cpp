#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "delaunay.hpp"
#include "graph_ops.hpp"
#include "lap.hpp"
#include "metrics.hpp"
#include "objectives.hpp"

namespace atgm {

void check_config(const AtgmConfig& cfg) {
  require(std::isfinite(cfg.lambda) && cfg.lambda >= 0.0, errc::invalid_argument,
          "config: lambda must be finite and non-negative");
  require(std::isfinite(cfg.lambda1) && cfg.lambda1 >= 0.0, errc::invalid_argument,
          "config: lambda1 must be finite and non-negative");
  require(std::isfinite(cfg.lambda2) && cfg.lambda2 >= 0.0, errc::invalid_argument,
          "config: lambda2 must be finite and non-negative");
  require(cfg.epsilon > 0.0, errc::invalid_argument, "config: epsilon must be positive");
  require(cfg.ratio_k > 0.0, errc::invalid_argument, "config: ratio_k must be positive");
  require(cfg.fw_shift.max_iters >= 1 && cfg.fw_edge.max_iters >= 1, errc::invalid_argument,
          "config: iteration caps must be positive");
}

RemovalState remove_outliers(const PointSet& xbar, const PointSet& y, double ratio_k,
                             int source_count, RemovalRule rule) {
  require(ratio_k > 0.0, errc::invalid_argument, "remove_outliers: ratio_k must be positive");
  require(xbar.count() == source_count, errc::dimension_mismatch,
          "remove_outliers: mapped set must have one point per source");
  require(y.count() >= source_count, errc::invalid_argument,
          "remove_outliers: fewer targets than sources");

  Matrix d = distance_matrix(xbar, y);
  Vector best = d.rowwise().minCoeff();
  int m = source_count, n = y.count();

  RemovalState out;
  for (int j = 0; j < n; ++j) {
    bool keep = rule == RemovalRule::keep_all_sources;
    for (int i = 0; i < m; ++i) {
      bool within = d(i, j) <= ratio_k * best(i);
      if (rule == RemovalRule::keep_union) {
        if (within) {
          keep = true;
          break;
        }
      } else if (!within) {
        keep = false;
        break;
      }
    }
    if (keep) out.kept.push_back(j);
  }

  if (static_cast<int>(out.kept.size()) < m) {
    // Refill from the discards, closest to the mapped sources first.
    std::vector<char> is_kept(n, 0);
    for (int j : out.kept) is_kept[j] = 1;
    std::vector<std::pair<double, int>> discarded;
    for (int j = 0; j < n; ++j) {
      if (!is_kept[j]) discarded.emplace_back(d.col(j).minCoeff(), j);
    }
    std::sort(discarded.begin(), discarded.end());
    for (auto& [dist, j] : discarded) {
      if (static_cast<int>(out.kept.size()) >= m) break;
      out.kept.push_back(j);
    }
    std::sort(out.kept.begin(), out.kept.end());
  }

  out.history.push_back(static_cast<int>(out.kept.size()));
  return out;
}

Matching post_discretize(const Matrix& p) {
  check_soft_assignment(p, 1e-6, "post_discretize");
  return solve_lap(-p).assignment;
}

namespace {

PointSet gather_rows(const PointSet& ps, const std::vector<int>& rows) {
  PointSet out;
  out.coords.resize(static_cast<int>(rows.size()), ps.dim());
  for (size_t k = 0; k < rows.size(); ++k) out.coords.row(k) = ps.coords.row(rows[k]);
  return out;
}

// Shared state for the full run and the filter-only entry point.
struct Driver {
  const AtgmConfig& cfg;
  PointSet x, y;
  GraphInstance gx;
  int m, n, rounds;
  std::vector<int> kept;
  AtgmDiagnostics diag;
  FwConfig shift_cfg, edge_cfg;

  Driver(const PointSet& x0, const PointSet& y0, const AtgmConfig& c) : cfg(c) {
    check_config(cfg);
    check_points(x0, "match_graphs: source");
    check_points(y0, "match_graphs: target");
    require(x0.dim() == y0.dim(), errc::dimension_mismatch,
            "match_graphs: source and target dimensions differ");
    m = x0.count();
    n = y0.count();
    require(m >= 2, errc::invalid_argument, "match_graphs: need at least 2 source points");
    require(m <= n, errc::invalid_argument,
            "match_graphs: more source points than target points");

    std::tie(x, y) = normalize_jointly(x0, y0);
    rounds = cfg.rounds >= 0 ? cfg.rounds : (m < n ? 2 : 0);

    if (cfg.connectivity == Connectivity::complete) {
      gx = complete_graph(x);
    } else {
      gx.points = x;
      gx.edges = delaunay_edges(x);
      gx.weights = inverse_length_weights(x, gx.edges);
    }

    kept.resize(n);
    std::iota(kept.begin(), kept.end(), 0);

    shift_cfg = cfg.fw_shift;
    edge_cfg = cfg.fw_edge;
    shift_cfg.validate_iterates |= cfg.validate_iterates;
    edge_cfg.validate_iterates |= cfg.validate_iterates;
  }

  // Both sets share one frame, so surviving targets are plain row subsets.
  PointSet targets() const { return gather_rows(y, kept); }

  Matrix unary_cost(const PointSet& yc) const {
    if (cfg.unary == UnaryMode::none) return Matrix::Zero(m, yc.count());
    return shape_context_cost(x, yc);
  }

  FwResult run_stage(const std::string& name, const Objective& obj, const Matrix& p0,
                     FwMode mode, const FwConfig& fc) {
    FwResult r;
    try {
      r = minimize(obj, p0, mode, fc);
    } catch (const Error& e) {
      fail(e.code(), name + ": " + e.what());
    }
    diag.stages.push_back(
        {name, mode, r.trace, r.final_value, r.final_gap, r.iterations, r.converged});
    return r;
  }

  void removal_pass(const Matrix& p, const PointSet& yc) {
    RemovalState rs = remove_outliers(transform(p, yc), yc, cfg.ratio_k, m, cfg.removal);
    std::vector<int> next;
    next.reserve(rs.kept.size());
    for (int j : rs.kept) next.push_back(kept[j]);
    kept = std::move(next);
    require(static_cast<int>(kept.size()) >= m, errc::numeric,
            "match_graphs: removal left fewer targets than sources");
    diag.removal.history.push_back(static_cast<int>(kept.size()));
  }

  void removal_rounds() {
    for (int r = 1; r <= rounds; ++r) {
      std::string tag = "round" + std::to_string(r);
      {
        PointSet yc = targets();
        Matrix d = distance_matrix(x, yc);
        // Barycentric starts collapse the map to the target centroid and
        // stall the smoothness term; seed at the nearest-target assignment.
        Matrix p0 = matching_matrix(solve_lap(d).assignment, yc.count());
        if (cfg.drop_unary_first_round && r == 1) d.setZero();
        ShiftObjective obj(x, yc, gx.weights, std::move(d), cfg.lambda1, cfg.lambda2);
        FwResult fr = run_stage(tag + "_shift", obj, p0, FwMode::convex, shift_cfg);
        removal_pass(fr.assignment, yc);
      }
      {
        PointSet yc = targets();
        EdgeDiscrepancyObjective obj(gx, yc, unary_cost(yc), cfg.lambda, cfg.epsilon);
        FwResult fr = run_stage(tag + "_edge", obj, uniform_assignment(m, yc.count()),
                                FwMode::nonconvex, edge_cfg);
        removal_pass(fr.assignment, yc);
      }
    }
  }

  Matching to_original(const Matching& reduced) const {
    Matching out;
    out.target_of.reserve(reduced.size());
    for (int j : reduced.target_of) out.target_of.push_back(kept[j]);
    return out;
  }
};

}  // namespace

AtgmResult match_graphs(const PointSet& x, const PointSet& y, const AtgmConfig& cfg) {
  Driver drv(x, y, cfg);
  drv.removal_rounds();

  PointSet yc = drv.targets();
  EdgeDiscrepancyObjective edge_obj(drv.gx, yc, drv.unary_cost(yc), cfg.lambda, cfg.epsilon);
  FwResult edge = drv.run_stage("final_edge", edge_obj,
                                uniform_assignment(drv.m, yc.count()), FwMode::nonconvex,
                                drv.edge_cfg);

  AtgmResult out;
  out.edge_matching = drv.to_original(post_discretize(edge.assignment));

  Matrix soft = edge.assignment;
  if (cfg.final_shift_stage) {
    PointSet mapped = transform(edge.assignment, yc);
    EdgeWeights sbar = unit_weights(prune_edges_kmeans(delaunay_edges(drv.x), drv.x));
    ShiftObjective shift_obj(mapped, yc, sbar, distance_matrix(mapped, yc), cfg.lambda1,
                             cfg.lambda2);
    FwResult shift = drv.run_stage("final_shift", shift_obj, edge.assignment, FwMode::convex,
                                   drv.shift_cfg);
    soft = shift.assignment;
  }

  out.matching = drv.to_original(post_discretize(soft));
  out.diagnostics = std::move(drv.diag);
  out.diagnostics.removal.kept = std::move(drv.kept);
  out.diagnostics.sparsity = sparsity_index(soft, 0.9);
  out.soft = std::move(soft);
  return out;
}

RemovalState filter_outliers(const PointSet& x, const PointSet& y, const AtgmConfig& cfg) {
  Driver drv(x, y, cfg);
  drv.removal_rounds();
  RemovalState out;
  out.kept = std::move(drv.kept);
  out.history = std::move(drv.diag.removal.history);
  return out;
}

}  // namespace atgm
