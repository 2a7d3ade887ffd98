#include "atgm.h"

#include <cstring>
#include <exception>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bench.hpp"
#include "error.hpp"
#include "graph_ops.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "objectives.hpp"
#include "pipeline.hpp"
#include "serialize.hpp"
#include "spectral.hpp"
#include "types.hpp"

struct atgm_points {
  atgm::PointSet ps;
};

struct atgm_result {
  atgm::Matching matching;
  double sparsity = std::numeric_limits<double>::quiet_NaN();
  double qap = std::numeric_limits<double>::quiet_NaN();
  bool is_spectral = false;
  std::string diagnostics;
};

struct atgm_filter_result {
  std::vector<int> kept;
  atgm::PointSet reduced;
};

namespace {

thread_local std::string g_last_error;

atgm_status map_code(atgm::errc code) {
  switch (code) {
    case atgm::errc::invalid_argument: return ATGM_ERROR_INVALID_ARGUMENT;
    case atgm::errc::degenerate_input: return ATGM_ERROR_DEGENERATE_INPUT;
    case atgm::errc::dimension_mismatch: return ATGM_ERROR_DIMENSION_MISMATCH;
    case atgm::errc::unsupported_dimension: return ATGM_ERROR_UNSUPPORTED_DIMENSION;
    case atgm::errc::shape: return ATGM_ERROR_SHAPE;
    case atgm::errc::capacity: return ATGM_ERROR_CAPACITY;
    case atgm::errc::numeric: return ATGM_ERROR_NUMERIC;
    case atgm::errc::parse: return ATGM_ERROR_PARSE;
    case atgm::errc::io: return ATGM_ERROR_IO;
  }
  return ATGM_ERROR_UNKNOWN;
}

template <typename Fn>
atgm_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return ATGM_OK;
  } catch (const atgm::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ATGM_ERROR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown failure";
    return ATGM_ERROR_UNKNOWN;
  }
}

void need(bool ok, const char* what) {
  atgm::require(ok, atgm::errc::invalid_argument, what);
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.data(), text.size() + 1);
  return out;
}

atgm::Connectivity to_connectivity(int32_t v) {
  switch (v) {
    case ATGM_CONNECTIVITY_COMPLETE: return atgm::Connectivity::complete;
    case ATGM_CONNECTIVITY_DELAUNAY: return atgm::Connectivity::delaunay;
    default: atgm::fail(atgm::errc::invalid_argument, "options: unknown connectivity");
  }
}

atgm::UnaryMode to_unary(int32_t v) {
  switch (v) {
    case ATGM_UNARY_SHAPE_CONTEXT: return atgm::UnaryMode::shape_context;
    case ATGM_UNARY_NONE: return atgm::UnaryMode::none;
    default: atgm::fail(atgm::errc::invalid_argument, "options: unknown unary mode");
  }
}

atgm::RemovalRule to_removal(int32_t v) {
  switch (v) {
    case ATGM_REMOVAL_UNION: return atgm::RemovalRule::keep_union;
    case ATGM_REMOVAL_ALL_SOURCES: return atgm::RemovalRule::keep_all_sources;
    default: atgm::fail(atgm::errc::invalid_argument, "options: unknown removal rule");
  }
}

atgm::AffinityKind to_affinity(int32_t v) {
  switch (v) {
    case ATGM_AFFINITY_ANGLE_LENGTH: return atgm::AffinityKind::angle_length;
    case ATGM_AFFINITY_LENGTH_ONLY: return atgm::AffinityKind::length_only;
    default: atgm::fail(atgm::errc::invalid_argument, "options: unknown affinity kind");
  }
}

atgm::AtgmConfig to_config(const atgm_options* options) {
  atgm::AtgmConfig cfg;
  if (options == nullptr) return cfg;
  cfg.lambda = options->lambda;
  cfg.lambda1 = options->lambda1;
  cfg.lambda2 = options->lambda2;
  cfg.epsilon = options->epsilon;
  cfg.ratio_k = options->ratio_k;
  cfg.rounds = options->rounds;
  cfg.connectivity = to_connectivity(options->connectivity);
  cfg.unary = to_unary(options->unary);
  cfg.removal = to_removal(options->removal_rule);
  cfg.drop_unary_first_round = options->drop_unary_first_round != 0;
  cfg.final_shift_stage = options->final_shift_stage != 0;
  cfg.validate_iterates = options->validate_iterates != 0;
  cfg.fw_shift.max_iters = options->shift_max_iters;
  cfg.fw_shift.rel_tol = options->shift_rel_tol;
  cfg.fw_edge.max_iters = options->edge_max_iters;
  cfg.fw_edge.rel_tol = options->edge_rel_tol;
  cfg.fw_shift.armijo_c = cfg.fw_edge.armijo_c = options->armijo_c;
  cfg.fw_shift.armijo_shrink = cfg.fw_edge.armijo_shrink = options->armijo_shrink;
  atgm::check_config(cfg);
  return cfg;
}

}  // namespace

extern "C" {

const char* atgm_version(void) { return "1.0.0"; }

const char* atgm_status_name(atgm_status status) {
  switch (status) {
    case ATGM_OK: return "ok";
    case ATGM_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case ATGM_ERROR_DEGENERATE_INPUT: return "degenerate_input";
    case ATGM_ERROR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case ATGM_ERROR_UNSUPPORTED_DIMENSION: return "unsupported_dimension";
    case ATGM_ERROR_SHAPE: return "shape";
    case ATGM_ERROR_CAPACITY: return "capacity";
    case ATGM_ERROR_NUMERIC: return "numeric";
    case ATGM_ERROR_PARSE: return "parse";
    case ATGM_ERROR_IO: return "io";
    case ATGM_ERROR_UNKNOWN: return "unknown";
  }
  return "unknown";
}

const char* atgm_last_error(void) { return g_last_error.c_str(); }

void atgm_string_free(char* text) { delete[] text; }

void atgm_options_init(atgm_options* options) {
  if (options == nullptr) return;
  atgm::AtgmConfig cfg;
  options->lambda = cfg.lambda;
  options->lambda1 = cfg.lambda1;
  options->lambda2 = cfg.lambda2;
  options->epsilon = cfg.epsilon;
  options->ratio_k = cfg.ratio_k;
  options->rounds = cfg.rounds;
  options->connectivity = ATGM_CONNECTIVITY_COMPLETE;
  options->unary = ATGM_UNARY_SHAPE_CONTEXT;
  options->removal_rule = ATGM_REMOVAL_UNION;
  options->drop_unary_first_round = cfg.drop_unary_first_round ? 1 : 0;
  options->final_shift_stage = 1;
  options->validate_iterates = 0;
  options->shift_max_iters = cfg.fw_shift.max_iters;
  options->shift_rel_tol = cfg.fw_shift.rel_tol;
  options->edge_max_iters = cfg.fw_edge.max_iters;
  options->edge_rel_tol = cfg.fw_edge.rel_tol;
  options->armijo_c = cfg.fw_edge.armijo_c;
  options->armijo_shrink = cfg.fw_edge.armijo_shrink;
}

void atgm_spectral_options_init(atgm_spectral_options* options) {
  if (options == nullptr) return;
  atgm::SpectralConfig cfg;
  options->affinity = ATGM_AFFINITY_LENGTH_ONLY;
  options->scale = 0.15;
  options->hungarian_readout = cfg.hungarian_readout ? 1 : 0;
  options->max_iters = cfg.max_iters;
  options->tol = cfg.tol;
}

atgm_status atgm_points_create(const double* coords, int32_t count, int32_t dim,
                               atgm_points** out) {
  return guarded([&] {
    need(coords != nullptr, "atgm_points_create: coords is null");
    need(out != nullptr, "atgm_points_create: out is null");
    need(count > 0 && dim > 0, "atgm_points_create: count and dim must be positive");
    atgm::PointSet ps;
    ps.coords.resize(count, dim);
    for (int32_t i = 0; i < count; ++i)
      for (int32_t j = 0; j < dim; ++j) ps.coords(i, j) = coords[i * dim + j];
    atgm::check_points(ps, "atgm_points_create");
    *out = new atgm_points{std::move(ps)};
  });
}

atgm_status atgm_points_load(const char* path, atgm_points** out) {
  return guarded([&] {
    need(path != nullptr, "atgm_points_load: path is null");
    need(out != nullptr, "atgm_points_load: out is null");
    *out = new atgm_points{atgm::load_points(path)};
  });
}

atgm_status atgm_points_save(const atgm_points* points, const char* path) {
  return guarded([&] {
    need(points != nullptr, "atgm_points_save: points is null");
    need(path != nullptr, "atgm_points_save: path is null");
    atgm::save_points(points->ps, path);
  });
}

int32_t atgm_points_count(const atgm_points* points) {
  return points == nullptr ? -1 : static_cast<int32_t>(points->ps.count());
}

int32_t atgm_points_dim(const atgm_points* points) {
  return points == nullptr ? -1 : static_cast<int32_t>(points->ps.dim());
}

atgm_status atgm_points_copy_coords(const atgm_points* points, double* out, int32_t capacity) {
  return guarded([&] {
    need(points != nullptr, "atgm_points_copy_coords: points is null");
    need(out != nullptr, "atgm_points_copy_coords: out is null");
    const auto& c = points->ps.coords;
    need(capacity >= c.size(), "atgm_points_copy_coords: capacity too small");
    for (Eigen::Index i = 0; i < c.rows(); ++i)
      for (Eigen::Index j = 0; j < c.cols(); ++j) out[i * c.cols() + j] = c(i, j);
  });
}

void atgm_points_free(atgm_points* points) { delete points; }

atgm_status atgm_match(const atgm_points* source, const atgm_points* target,
                       const atgm_options* options, atgm_result** out) {
  return guarded([&] {
    need(source != nullptr, "atgm_match: source is null");
    need(target != nullptr, "atgm_match: target is null");
    need(out != nullptr, "atgm_match: out is null");
    atgm::AtgmConfig cfg = to_config(options);
    atgm::AtgmResult res = atgm::match_graphs(source->ps, target->ps, cfg);
    auto* handle = new atgm_result;
    handle->matching = res.matching;
    handle->sparsity = res.diagnostics.sparsity;
    handle->diagnostics = atgm::diagnostics_json(res);
    *out = handle;
  });
}

atgm_status atgm_spectral_match(const atgm_points* source, const atgm_points* target,
                                const atgm_spectral_options* options, atgm_result** out) {
  return guarded([&] {
    need(source != nullptr, "atgm_spectral_match: source is null");
    need(target != nullptr, "atgm_spectral_match: target is null");
    need(out != nullptr, "atgm_spectral_match: out is null");
    atgm_spectral_options defaults;
    atgm_spectral_options_init(&defaults);
    const atgm_spectral_options* opt = options == nullptr ? &defaults : options;
    atgm::SpectralConfig cfg;
    cfg.hungarian_readout = opt->hungarian_readout != 0;
    cfg.max_iters = opt->max_iters;
    cfg.tol = opt->tol;
    const int m = static_cast<int>(source->ps.count());
    const int n = static_cast<int>(target->ps.count());
    auto [xn, yn] = atgm::normalize_jointly(source->ps, target->ps);
    atgm::Matrix w = atgm::affinity_matrix(xn, yn, to_affinity(opt->affinity), opt->scale);
    atgm::SpectralResult res = atgm::spectral_match(w, m, n, cfg);
    auto* handle = new atgm_result;
    handle->matching = res.matching;
    handle->qap = res.qap_score;
    handle->is_spectral = true;
    std::ostringstream json;
    json << "{\n  \"qap_score\": " << res.qap_score
         << ",\n  \"converged\": " << (res.converged ? "true" : "false")
         << ",\n  \"iterations\": " << res.iterations << "\n}";
    handle->diagnostics = json.str();
    *out = handle;
  });
}

atgm_status atgm_filter(const atgm_points* source, const atgm_points* target,
                        const atgm_options* options, atgm_filter_result** out) {
  return guarded([&] {
    need(source != nullptr, "atgm_filter: source is null");
    need(target != nullptr, "atgm_filter: target is null");
    need(out != nullptr, "atgm_filter: out is null");
    atgm::AtgmConfig cfg = to_config(options);
    atgm::RemovalState state = atgm::filter_outliers(source->ps, target->ps, cfg);
    atgm::PointSet reduced;
    reduced.coords.resize(static_cast<Eigen::Index>(state.kept.size()), target->ps.dim());
    for (std::size_t i = 0; i < state.kept.size(); ++i)
      reduced.coords.row(static_cast<Eigen::Index>(i)) = target->ps.coords.row(state.kept[i]);
    *out = new atgm_filter_result{std::move(state.kept), std::move(reduced)};
  });
}

int32_t atgm_result_size(const atgm_result* result) {
  return result == nullptr ? -1 : static_cast<int32_t>(result->matching.size());
}

atgm_status atgm_result_assignment(const atgm_result* result, int32_t* out, int32_t capacity) {
  return guarded([&] {
    need(result != nullptr, "atgm_result_assignment: result is null");
    need(out != nullptr, "atgm_result_assignment: out is null");
    const auto& t = result->matching.target_of;
    need(capacity >= static_cast<int32_t>(t.size()),
         "atgm_result_assignment: capacity too small");
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i];
  });
}

atgm_status atgm_result_accuracy(const atgm_result* result, const int32_t* truth, int32_t count,
                                 double* out) {
  return guarded([&] {
    need(result != nullptr, "atgm_result_accuracy: result is null");
    need(truth != nullptr, "atgm_result_accuracy: truth is null");
    need(out != nullptr, "atgm_result_accuracy: out is null");
    atgm::Matching expected;
    expected.target_of.assign(truth, truth + count);
    *out = atgm::accuracy(result->matching, expected);
  });
}

atgm_status atgm_result_sparsity(const atgm_result* result, double* out) {
  return guarded([&] {
    need(result != nullptr, "atgm_result_sparsity: result is null");
    need(out != nullptr, "atgm_result_sparsity: out is null");
    atgm::require(!result->is_spectral, atgm::errc::invalid_argument,
                  "atgm_result_sparsity: spectral results carry no soft assignment");
    *out = result->sparsity;
  });
}

atgm_status atgm_result_qap_score(const atgm_result* result, double* out) {
  return guarded([&] {
    need(result != nullptr, "atgm_result_qap_score: result is null");
    need(out != nullptr, "atgm_result_qap_score: out is null");
    atgm::require(result->is_spectral, atgm::errc::invalid_argument,
                  "atgm_result_qap_score: only spectral results carry a score");
    *out = result->qap;
  });
}

atgm_status atgm_result_diagnostics_json(const atgm_result* result, char** out) {
  return guarded([&] {
    need(result != nullptr, "atgm_result_diagnostics_json: result is null");
    need(out != nullptr, "atgm_result_diagnostics_json: out is null");
    *out = copy_string(result->diagnostics);
  });
}

void atgm_result_free(atgm_result* result) { delete result; }

int32_t atgm_filter_result_count(const atgm_filter_result* result) {
  return result == nullptr ? -1 : static_cast<int32_t>(result->kept.size());
}

atgm_status atgm_filter_result_indices(const atgm_filter_result* result, int32_t* out,
                                       int32_t capacity) {
  return guarded([&] {
    need(result != nullptr, "atgm_filter_result_indices: result is null");
    need(out != nullptr, "atgm_filter_result_indices: out is null");
    need(capacity >= static_cast<int32_t>(result->kept.size()),
         "atgm_filter_result_indices: capacity too small");
    for (std::size_t i = 0; i < result->kept.size(); ++i) out[i] = result->kept[i];
  });
}

atgm_status atgm_filter_result_points(const atgm_filter_result* result, atgm_points** out) {
  return guarded([&] {
    need(result != nullptr, "atgm_filter_result_points: result is null");
    need(out != nullptr, "atgm_filter_result_points: out is null");
    *out = new atgm_points{result->reduced};
  });
}

void atgm_filter_result_free(atgm_filter_result* result) { delete result; }

atgm_status atgm_synthetic_generate(const atgm_synthetic_spec* spec, atgm_points** x,
                                    atgm_points** y, int32_t* truth, int32_t truth_capacity) {
  return guarded([&] {
    need(spec != nullptr, "atgm_synthetic_generate: spec is null");
    need(x != nullptr, "atgm_synthetic_generate: x is null");
    need(y != nullptr, "atgm_synthetic_generate: y is null");
    atgm::SyntheticSpec s;
    s.inliers = spec->inliers;
    s.outliers = spec->outliers;
    s.sigma = spec->sigma;
    s.seed = spec->seed;
    atgm::SyntheticInstance inst = atgm::gen_synthetic(s);
    if (truth != nullptr) {
      need(truth_capacity >= static_cast<int32_t>(inst.truth.size()),
           "atgm_synthetic_generate: truth capacity too small");
      for (std::size_t i = 0; i < inst.truth.target_of.size(); ++i)
        truth[i] = inst.truth.target_of[i];
    }
    auto* px = new atgm_points{std::move(inst.x)};
    atgm_points* py = nullptr;
    try {
      py = new atgm_points{std::move(inst.y)};
    } catch (...) {
      delete px;
      throw;
    }
    *x = px;
    *y = py;
  });
}

atgm_status atgm_sweep_run(const char* request_json, char** csv_out, char** summary_json_out) {
  return guarded([&] {
    need(request_json != nullptr, "atgm_sweep_run: request_json is null");
    atgm::SweepRequest req = atgm::sweep_request_from_json(request_json);
    atgm::SweepResults results = atgm::run_sweep(req);
    if (csv_out != nullptr) *csv_out = copy_string(atgm::sweep_csv(results));
    if (summary_json_out != nullptr)
      *summary_json_out = copy_string(atgm::sweep_summary_json(req, results));
  });
}

}  // extern "C"
