#include "bench.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "graph_ops.hpp"
#include "metrics.hpp"
#include "rng.hpp"

namespace atgm {

SyntheticInstance gen_synthetic(const SyntheticSpec& spec) {
  require(spec.inliers >= 2, errc::invalid_argument, "gen_synthetic: need at least 2 inliers");
  require(spec.outliers >= 0, errc::invalid_argument, "gen_synthetic: negative outlier count");
  require(spec.sigma >= 0.0 && std::isfinite(spec.sigma), errc::invalid_argument,
          "gen_synthetic: sigma must be finite and non-negative");

  Rng rng(spec.seed);
  int m = spec.inliers, n = spec.inliers + spec.outliers;

  SyntheticInstance inst;
  inst.x.coords.resize(m, 2);
  for (int i = 0; i < m; ++i) {
    inst.x.coords(i, 0) = rng.normal();
    inst.x.coords(i, 1) = rng.normal();
  }

  Matrix unshuffled(n, 2);
  for (int i = 0; i < m; ++i) {
    unshuffled(i, 0) = inst.x.coords(i, 0) + spec.sigma * rng.normal();
    unshuffled(i, 1) = inst.x.coords(i, 1) + spec.sigma * rng.normal();
  }
  for (int i = m; i < n; ++i) {
    unshuffled(i, 0) = rng.normal();
    unshuffled(i, 1) = rng.normal();
  }

  std::vector<int> origin(n);
  std::iota(origin.begin(), origin.end(), 0);
  rng.shuffle(origin);

  inst.y.coords.resize(n, 2);
  inst.truth.target_of.assign(m, -1);
  for (int k = 0; k < n; ++k) {
    inst.y.coords.row(k) = unshuffled.row(origin[k]);
    if (origin[k] < m) inst.truth.target_of[origin[k]] = k;
  }
  return inst;
}

const char* method_name(Method m) {
  return m == Method::atgm ? "atgm" : "spectral";
}

namespace {

PointSet gather_rows(const PointSet& ps, const std::vector<int>& rows) {
  PointSet out;
  out.coords.resize(static_cast<int>(rows.size()), ps.dim());
  for (size_t k = 0; k < rows.size(); ++k) out.coords.row(k) = ps.coords.row(rows[k]);
  return out;
}

TrialRow run_trial(const SweepRequest& req, const SyntheticInstance& inst, Method method) {
  TrialRow row;
  row.method = method;
  auto start = std::chrono::steady_clock::now();
  try {
    const PointSet* target = &inst.y;
    PointSet reduced;
    std::vector<int> kept;  // reduced -> original target index
    if (req.removal_preprocess) {
      RemovalState rs = filter_outliers(inst.x, inst.y, req.config);
      kept = std::move(rs.kept);
      reduced = gather_rows(inst.y, kept);
      target = &reduced;
    }

    Matching found;
    if (method == Method::atgm) {
      AtgmResult res = match_graphs(inst.x, *target, req.config);
      found = std::move(res.matching);
      row.sparsity = res.diagnostics.sparsity;
    } else {
      auto [xn, yn] = normalize_jointly(inst.x, *target);
      Matrix w = affinity_matrix(xn, yn, req.affinity, req.affinity_scale);
      SpectralResult res = spectral_match(w, inst.x.count(), target->count(), req.spectral);
      found = std::move(res.matching);
      row.sparsity = std::numeric_limits<double>::quiet_NaN();
    }
    if (!kept.empty()) {
      for (int& j : found.target_of) j = kept[j];
    }
    row.accuracy = accuracy(found, inst.truth);
  } catch (const Error& e) {
    row.failed = true;
    row.error = std::string(errc_name(e.code())) + ": " + e.what();
  }
  row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

SweepResults run_sweep(const SweepRequest& req) {
  require(!req.cells.empty(), errc::invalid_argument, "run_sweep: empty cell grid");
  require(req.trials >= 1, errc::invalid_argument, "run_sweep: need at least 1 trial");
  require(!req.methods.empty(), errc::invalid_argument, "run_sweep: no methods selected");

  SweepResults out;
  for (size_t ci = 0; ci < req.cells.size(); ++ci) {
    const SweepCell& cell = req.cells[ci];
    for (Method method : req.methods) {
      CellSummary summary;
      summary.cell = static_cast<int>(ci);
      summary.params = cell;
      summary.method = method;
      for (int t = 0; t < req.trials; ++t) {
        uint64_t trial_seed = derive_seed(req.seed, ci, static_cast<uint64_t>(t));
        TrialRow row;
        try {
          SyntheticInstance inst =
              gen_synthetic({cell.inliers, cell.outliers, cell.sigma, trial_seed});
          row = run_trial(req, inst, method);
        } catch (const Error& e) {
          row.failed = true;
          row.error = std::string(errc_name(e.code())) + ": " + e.what();
        }
        row.cell = static_cast<int>(ci);
        row.params = cell;
        row.method = method;
        row.trial = t;
        row.seed = trial_seed;
        out.rows.push_back(std::move(row));

        const TrialRow& r = out.rows.back();
        if (r.failed) {
          ++summary.trials_failed;
        } else {
          ++summary.trials_ok;
          summary.mean_accuracy += r.accuracy;
          if (!std::isnan(r.sparsity)) summary.mean_sparsity += r.sparsity;
          summary.mean_wall_time += r.wall_time;
        }
      }
      if (summary.trials_ok > 0) {
        summary.mean_accuracy /= summary.trials_ok;
        summary.mean_sparsity /= summary.trials_ok;
        summary.mean_wall_time /= summary.trials_ok;
      }
      out.cells.push_back(std::move(summary));
    }
  }
  return out;
}

std::string sweep_csv(const SweepResults& results) {
  std::ostringstream os;
  os.precision(10);
  os << "inliers,outliers,sigma,method,trial,seed,accuracy,sparsity,wall_time,status\n";
  for (const TrialRow& r : results.rows) {
    os << r.params.inliers << ',' << r.params.outliers << ',' << r.params.sigma << ','
       << method_name(r.method) << ',' << r.trial << ',' << r.seed << ',';
    if (r.failed) {
      os << ",,";
    } else {
      os << r.accuracy << ',';
      if (!std::isnan(r.sparsity)) os << r.sparsity;
      os << ',';
    }
    os.precision(6);
    os << std::fixed << r.wall_time;
    os.unsetf(std::ios_base::floatfield);
    os.precision(10);
    os << ',' << (r.failed ? "failed" : "ok") << '\n';
  }
  return os.str();
}

}  // namespace atgm
