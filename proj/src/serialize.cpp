#include "serialize.hpp"

#include <cmath>

#include <json.hpp>

namespace atgm {

using json = nlohmann::json;

std::string diagnostics_json(const AtgmResult& result) {
  json j;
  j["matched"] = result.matching.target_of;
  j["edge_stage_matched"] = result.edge_matching.target_of;
  j["sparsity"] = result.diagnostics.sparsity;
  j["kept"] = result.diagnostics.removal.kept;
  j["removal_history"] = result.diagnostics.removal.history;

  json stages = json::array();
  for (const StageReport& s : result.diagnostics.stages) {
    json stage;
    stage["name"] = s.name;
    stage["mode"] = s.mode == FwMode::convex ? "convex" : "nonconvex";
    stage["iterations"] = s.iterations;
    stage["converged"] = s.converged;
    stage["final_value"] = s.final_value;
    stage["final_gap"] = s.final_gap;
    stage["values"] = s.trace.values;
    stage["steps"] = s.trace.steps;
    stage["gaps"] = s.trace.gaps;
    stages.push_back(std::move(stage));
  }
  j["stages"] = std::move(stages);
  return j.dump(2);
}

namespace {

[[noreturn]] void bad_request(const std::string& what) {
  fail(errc::parse, "sweep request: " + what);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad_request(std::string("field '") + key + "' has the wrong type");
  }
}

void parse_fw(const json& j, const char* key, FwConfig& cfg) {
  if (!j.contains(key)) return;
  const json& f = j.at(key);
  if (!f.is_object()) bad_request(std::string("'") + key + "' must be an object");
  cfg.max_iters = get_or(f, "max_iters", cfg.max_iters);
  cfg.rel_tol = get_or(f, "rel_tol", cfg.rel_tol);
  cfg.armijo_c = get_or(f, "armijo_c", cfg.armijo_c);
  cfg.armijo_shrink = get_or(f, "armijo_shrink", cfg.armijo_shrink);
}

void parse_options(const json& j, AtgmConfig& cfg) {
  cfg.lambda = get_or(j, "lambda", cfg.lambda);
  cfg.lambda1 = get_or(j, "lambda1", cfg.lambda1);
  cfg.lambda2 = get_or(j, "lambda2", cfg.lambda2);
  cfg.epsilon = get_or(j, "epsilon", cfg.epsilon);
  cfg.ratio_k = get_or(j, "ratio_k", cfg.ratio_k);
  cfg.rounds = get_or(j, "rounds", cfg.rounds);
  cfg.drop_unary_first_round =
      get_or(j, "drop_unary_first_round", cfg.drop_unary_first_round);
  cfg.final_shift_stage = get_or(j, "final_shift_stage", cfg.final_shift_stage);
  cfg.validate_iterates = get_or(j, "validate_iterates", cfg.validate_iterates);

  std::string conn = get_or<std::string>(j, "connectivity", "");
  if (conn == "complete") {
    cfg.connectivity = Connectivity::complete;
  } else if (conn == "delaunay") {
    cfg.connectivity = Connectivity::delaunay;
  } else if (!conn.empty()) {
    bad_request("connectivity must be 'complete' or 'delaunay'");
  }

  std::string unary = get_or<std::string>(j, "unary", "");
  if (unary == "shape_context") {
    cfg.unary = UnaryMode::shape_context;
  } else if (unary == "none") {
    cfg.unary = UnaryMode::none;
  } else if (!unary.empty()) {
    bad_request("unary must be 'shape_context' or 'none'");
  }

  std::string removal = get_or<std::string>(j, "removal_rule", "");
  if (removal == "union") {
    cfg.removal = RemovalRule::keep_union;
  } else if (removal == "all_sources") {
    cfg.removal = RemovalRule::keep_all_sources;
  } else if (!removal.empty()) {
    bad_request("removal_rule must be 'union' or 'all_sources'");
  }

  parse_fw(j, "fw_shift", cfg.fw_shift);
  parse_fw(j, "fw_edge", cfg.fw_edge);
}

}  // namespace

SweepRequest sweep_request_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad_request(e.what());
  }
  if (!j.is_object()) bad_request("top level must be an object");

  SweepRequest req;
  if (!j.contains("cells") || !j.at("cells").is_array() || j.at("cells").empty()) {
    bad_request("'cells' must be a non-empty array");
  }
  for (const json& c : j.at("cells")) {
    if (!c.is_object() || !c.contains("inliers")) {
      bad_request("each cell needs at least an 'inliers' field");
    }
    SweepCell cell;
    cell.inliers = get_or(c, "inliers", 0);
    cell.outliers = get_or(c, "outliers", 0);
    cell.sigma = get_or(c, "sigma", 0.0);
    req.cells.push_back(cell);
  }

  req.trials = get_or(j, "trials", req.trials);
  req.seed = get_or<uint64_t>(j, "seed", req.seed);
  req.removal_preprocess = get_or(j, "removal_preprocess", req.removal_preprocess);
  req.affinity_scale = get_or(j, "affinity_scale", req.affinity_scale);
  req.spectral.hungarian_readout =
      get_or(j, "spectral_hungarian", req.spectral.hungarian_readout);

  if (j.contains("methods")) {
    if (!j.at("methods").is_array()) bad_request("'methods' must be an array");
    req.methods.clear();
    for (const json& mj : j.at("methods")) {
      std::string name = mj.is_string() ? mj.get<std::string>() : "";
      if (name == "atgm") {
        req.methods.push_back(Method::atgm);
      } else if (name == "spectral") {
        req.methods.push_back(Method::spectral);
      } else {
        bad_request("methods entries must be 'atgm' or 'spectral'");
      }
    }
    if (req.methods.empty()) bad_request("'methods' must not be empty");
  }

  std::string aff = get_or<std::string>(j, "affinity", "");
  if (aff == "length_only") {
    req.affinity = AffinityKind::length_only;
  } else if (aff == "angle_length") {
    req.affinity = AffinityKind::angle_length;
  } else if (!aff.empty()) {
    bad_request("affinity must be 'length_only' or 'angle_length'");
  }

  if (j.contains("options")) {
    if (!j.at("options").is_object()) bad_request("'options' must be an object");
    parse_options(j.at("options"), req.config);
  }
  return req;
}

std::string sweep_summary_json(const SweepRequest& req, const SweepResults& results) {
  json j;
  j["trials"] = req.trials;
  j["seed"] = req.seed;
  j["removal_preprocess"] = req.removal_preprocess;
  json methods = json::array();
  for (Method m : req.methods) methods.push_back(method_name(m));
  j["methods"] = std::move(methods);

  json cells = json::array();
  for (const CellSummary& c : results.cells) {
    json cj;
    cj["inliers"] = c.params.inliers;
    cj["outliers"] = c.params.outliers;
    cj["sigma"] = c.params.sigma;
    cj["method"] = method_name(c.method);
    cj["trials_ok"] = c.trials_ok;
    cj["trials_failed"] = c.trials_failed;
    if (c.trials_ok > 0) {
      cj["mean_accuracy"] = c.mean_accuracy;
      cj["mean_wall_time"] = c.mean_wall_time;
      if (c.method == Method::atgm) cj["mean_sparsity"] = c.mean_sparsity;
    }
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  return j.dump(2);
}

}  // namespace atgm
