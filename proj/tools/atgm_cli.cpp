// Command-line front end; talks to the library exclusively through the C API.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atgm.h"

namespace {

struct PointsDeleter {
  void operator()(atgm_points* p) const { atgm_points_free(p); }
};
struct ResultDeleter {
  void operator()(atgm_result* r) const { atgm_result_free(r); }
};
struct FilterDeleter {
  void operator()(atgm_filter_result* r) const { atgm_filter_result_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { atgm_string_free(s); }
};
using PointsPtr = std::unique_ptr<atgm_points, PointsDeleter>;
using ResultPtr = std::unique_ptr<atgm_result, ResultDeleter>;
using FilterPtr = std::unique_ptr<atgm_filter_result, FilterDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int exit_code(atgm_status status) {
  if (status == ATGM_OK) return 0;
  if (status == ATGM_ERROR_NUMERIC || status == ATGM_ERROR_UNKNOWN) return 3;
  return 2;
}

int report(atgm_status status) {
  std::cerr << "atgm: " << atgm_status_name(status) << ": " << atgm_last_error() << "\n";
  return exit_code(status);
}

int report(const std::string& message) {
  std::cerr << "atgm: " << message << "\n";
  return 2;
}

bool write_text(const std::string& path, const std::string& text, std::string& error) {
  std::ofstream out(path);
  if (!out) {
    error = "cannot open '" + path + "' for writing";
    return false;
  }
  out << text;
  out.flush();
  if (!out) {
    error = "failed writing '" + path + "'";
    return false;
  }
  return true;
}

// Matcher flags mirror the library defaults; strings resolve after parsing.
struct MatcherFlags {
  atgm_options opt;
  std::string connectivity = "complete";
  std::string unary = "shape_context";
  std::string removal = "union";
  bool drop_unary_first = false;
  bool no_final_shift = false;
  bool validate = false;

  MatcherFlags() { atgm_options_init(&opt); }

  atgm_options finalized() const {
    atgm_options o = opt;
    o.connectivity =
        connectivity == "delaunay" ? ATGM_CONNECTIVITY_DELAUNAY : ATGM_CONNECTIVITY_COMPLETE;
    o.unary = unary == "none" ? ATGM_UNARY_NONE : ATGM_UNARY_SHAPE_CONTEXT;
    o.removal_rule = removal == "all_sources" ? ATGM_REMOVAL_ALL_SOURCES : ATGM_REMOVAL_UNION;
    o.drop_unary_first_round = drop_unary_first ? 1 : 0;
    o.final_shift_stage = no_final_shift ? 0 : 1;
    o.validate_iterates = validate ? 1 : 0;
    return o;
  }
};

void add_matcher_flags(CLI::App* cmd, MatcherFlags& f) {
  cmd->add_option("--lambda", f.opt.lambda, "Edge-discrepancy weight")->capture_default_str();
  cmd->add_option("--lambda1", f.opt.lambda1, "L1 penalty of the shift objectives")
      ->capture_default_str();
  cmd->add_option("--lambda2", f.opt.lambda2, "Shift-smoothness weight")->capture_default_str();
  cmd->add_option("--epsilon", f.opt.epsilon, "Edge-gradient regularizer")->capture_default_str();
  cmd->add_option("--ratio-k", f.opt.ratio_k, "Outlier distance-ratio threshold")
      ->capture_default_str();
  cmd->add_option("--rounds", f.opt.rounds, "Removal rounds (-1 = automatic)")
      ->capture_default_str();
  cmd->add_option("--connectivity", f.connectivity, "Source graph connectivity")
      ->check(CLI::IsMember({"complete", "delaunay"}))
      ->capture_default_str();
  cmd->add_option("--unary", f.unary, "Unary cost between node neighborhoods")
      ->check(CLI::IsMember({"shape_context", "none"}))
      ->capture_default_str();
  cmd->add_option("--removal-rule", f.removal, "Quantifier of the ratio test")
      ->check(CLI::IsMember({"union", "all_sources"}))
      ->capture_default_str();
  cmd->add_flag("--drop-unary-first-round,!--keep-unary-first-round", f.drop_unary_first,
                "Zero the unary cost in the first removal round")
      ->capture_default_str();
  cmd->add_flag("--no-final-shift", f.no_final_shift, "Stop after the edge stage");
  cmd->add_flag("--validate-iterates", f.validate, "Re-check feasibility at every step");
  cmd->add_option("--shift-max-iters", f.opt.shift_max_iters, "Solver cap, shift stages")
      ->capture_default_str();
  cmd->add_option("--shift-rel-tol", f.opt.shift_rel_tol, "Stopping tolerance, shift stages")
      ->capture_default_str();
  cmd->add_option("--edge-max-iters", f.opt.edge_max_iters, "Solver cap, edge stages")
      ->capture_default_str();
  cmd->add_option("--edge-rel-tol", f.opt.edge_rel_tol, "Stopping tolerance, edge stages")
      ->capture_default_str();
}

int load_pair(const std::string& src, const std::string& dst, PointsPtr& x, PointsPtr& y) {
  atgm_points* raw = nullptr;
  atgm_status st = atgm_points_load(src.c_str(), &raw);
  if (st != ATGM_OK) return report(st);
  x.reset(raw);
  raw = nullptr;
  st = atgm_points_load(dst.c_str(), &raw);
  if (st != ATGM_OK) return report(st);
  y.reset(raw);
  return 0;
}

// "i j" lines covering every source index exactly once.
bool load_truth(const std::string& path, int32_t count, std::vector<int32_t>& truth,
                std::string& error) {
  std::ifstream in(path);
  if (!in) {
    error = "cannot open '" + path + "'";
    return false;
  }
  truth.assign(count, -1);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    long long i = 0, j = 0;
    if (!(row >> i)) continue;  // blank line
    std::string tail;
    if (!(row >> j) || (row >> tail)) {
      error = path + ":" + std::to_string(line_no) + ": expected two indices";
      return false;
    }
    if (i < 0 || i >= count || truth[static_cast<std::size_t>(i)] != -1) {
      error = path + ":" + std::to_string(line_no) + ": bad or repeated source index";
      return false;
    }
    truth[static_cast<std::size_t>(i)] = static_cast<int32_t>(j);
  }
  for (int32_t i = 0; i < count; ++i) {
    if (truth[static_cast<std::size_t>(i)] == -1) {
      error = path + ": no entry for source " + std::to_string(i);
      return false;
    }
  }
  return true;
}

std::string matching_text(const std::vector<int32_t>& assignment) {
  std::ostringstream out;
  for (std::size_t i = 0; i < assignment.size(); ++i) out << i << " " << assignment[i] << "\n";
  return out.str();
}

// Inserts an accuracy field right after the opening brace of a diagnostics
// object produced by the library.
std::string with_accuracy(const std::string& json, double accuracy) {
  std::ostringstream out;
  out << std::setprecision(10) << "{\n  \"accuracy\": " << accuracy << ",";
  return out.str() + json.substr(1);
}

// Shared tail of the match and baseline commands: emit the matching, score
// against ground truth when given, write diagnostics.
int emit_result(const atgm_result* result, const std::string& out_path,
                const std::string& diag_path, const std::string& truth_path) {
  const int32_t m = atgm_result_size(result);
  std::vector<int32_t> assignment(static_cast<std::size_t>(m));
  atgm_status st = atgm_result_assignment(result, assignment.data(), m);
  if (st != ATGM_OK) return report(st);

  const std::string text = matching_text(assignment);
  std::string error;
  if (out_path.empty()) {
    std::cout << text;
  } else if (!write_text(out_path, text, error)) {
    return report(error);
  }

  bool have_accuracy = false;
  double accuracy = 0.0;
  if (!truth_path.empty()) {
    std::vector<int32_t> truth;
    if (!load_truth(truth_path, m, truth, error)) return report(error);
    st = atgm_result_accuracy(result, truth.data(), m, &accuracy);
    if (st != ATGM_OK) return report(st);
    have_accuracy = true;
    std::cerr << std::setprecision(10) << "accuracy " << accuracy << "\n";
  }

  if (!diag_path.empty()) {
    char* raw = nullptr;
    st = atgm_result_diagnostics_json(result, &raw);
    if (st != ATGM_OK) return report(st);
    StringPtr diag(raw);
    std::string json(diag.get());
    if (have_accuracy) json = with_accuracy(json, accuracy);
    if (!write_text(diag_path, json + "\n", error)) return report(error);
  }
  return 0;
}

struct Cell {
  int inliers = 0;
  int outliers = 0;
  double sigma = 0.0;
};

std::vector<Cell> preset_cells(const std::string& name, int max_n) {
  std::vector<Cell> cells;
  for (int n : {100, 300, 500, 1000}) {
    if (max_n > 0 && n > max_n) continue;
    if (name == "table1-noise") {
      for (double sigma : {0.02, 0.04, 0.06, 0.08, 0.10}) cells.push_back({n, 0, sigma});
    } else {
      for (double frac : {0.2, 0.4, 0.6, 0.8, 1.0})
        cells.push_back({n, static_cast<int>(std::lround(frac * n)), 0.02});
    }
  }
  return cells;
}

std::string sweep_request_json(const std::vector<Cell>& cells, int trials, std::uint64_t seed,
                               const std::vector<std::string>& methods, bool preprocess,
                               const std::string& affinity, double affinity_scale,
                               bool spectral_hungarian, const MatcherFlags& f) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "{\"cells\":[";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) os << ",";
    os << "{\"inliers\":" << cells[i].inliers << ",\"outliers\":" << cells[i].outliers
       << ",\"sigma\":" << cells[i].sigma << "}";
  }
  os << "],\"trials\":" << trials << ",\"seed\":" << seed << ",\"methods\":[";
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (i != 0) os << ",";
    os << "\"" << methods[i] << "\"";
  }
  os << "],\"removal_preprocess\":" << (preprocess ? "true" : "false");
  os << ",\"affinity\":\"" << affinity << "\",\"affinity_scale\":" << affinity_scale;
  os << ",\"spectral_hungarian\":" << (spectral_hungarian ? "true" : "false");
  os << ",\"options\":{";
  os << "\"lambda\":" << f.opt.lambda << ",\"lambda1\":" << f.opt.lambda1
     << ",\"lambda2\":" << f.opt.lambda2 << ",\"epsilon\":" << f.opt.epsilon
     << ",\"ratio_k\":" << f.opt.ratio_k << ",\"rounds\":" << f.opt.rounds;
  os << ",\"connectivity\":\"" << f.connectivity << "\",\"unary\":\"" << f.unary
     << "\",\"removal_rule\":\"" << f.removal << "\"";
  os << ",\"drop_unary_first_round\":" << (f.drop_unary_first ? "true" : "false");
  os << ",\"final_shift_stage\":" << (f.no_final_shift ? "false" : "true");
  os << ",\"validate_iterates\":" << (f.validate ? "true" : "false");
  os << ",\"fw_shift\":{\"max_iters\":" << f.opt.shift_max_iters
     << ",\"rel_tol\":" << f.opt.shift_rel_tol << "}";
  os << ",\"fw_edge\":{\"max_iters\":" << f.opt.edge_max_iters
     << ",\"rel_tol\":" << f.opt.edge_rel_tol << "}";
  os << "}}";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point-set graph matching through adaptive transformation maps"};
  app.require_subcommand(1);

  std::string src, dst, out_path, diag_path, truth_path, indices_path;
  MatcherFlags flags;
  std::string affinity = "length_only";
  double affinity_scale = 0.15;
  std::string readout = "greedy";

  CLI::App* match = app.add_subcommand("match", "Match two point-set files");
  match->add_option("source", src, "Source point file")->required()->check(CLI::ExistingFile);
  match->add_option("target", dst, "Target point file")->required()->check(CLI::ExistingFile);
  match->add_option("--out", out_path, "Matching output file (default: stdout)");
  match->add_option("--diagnostics", diag_path, "Write solver diagnostics JSON here");
  match->add_option("--ground-truth", truth_path, "Score against this matching file")
      ->check(CLI::ExistingFile);
  add_matcher_flags(match, flags);

  CLI::App* baseline = app.add_subcommand("baseline", "Spectral matching over a pair affinity");
  baseline->add_option("source", src, "Source point file")->required()->check(CLI::ExistingFile);
  baseline->add_option("target", dst, "Target point file")->required()->check(CLI::ExistingFile);
  baseline->add_option("--out", out_path, "Matching output file (default: stdout)");
  baseline->add_option("--diagnostics", diag_path, "Write score/convergence JSON here");
  baseline->add_option("--ground-truth", truth_path, "Score against this matching file")
      ->check(CLI::ExistingFile);
  baseline->add_option("--affinity", affinity, "Pair affinity kind")
      ->check(CLI::IsMember({"length_only", "angle_length"}))
      ->capture_default_str();
  baseline->add_option("--affinity-scale", affinity_scale, "Length-only denominator")
      ->capture_default_str();
  baseline->add_option("--readout", readout, "Discretization of the principal vector")
      ->check(CLI::IsMember({"greedy", "hungarian"}))
      ->capture_default_str();

  CLI::App* filter = app.add_subcommand("filter", "Run only the outlier-removal rounds");
  filter->add_option("source", src, "Source point file")->required()->check(CLI::ExistingFile);
  filter->add_option("target", dst, "Target point file")->required()->check(CLI::ExistingFile);
  filter->add_option("--out", out_path, "Write the reduced target point file here");
  filter->add_option("--indices", indices_path,
                     "Kept original target indices, one per line (default: stdout)");
  add_matcher_flags(filter, flags);

  CLI::App* sweep = app.add_subcommand("sweep", "Synthetic benchmark over a parameter grid");
  std::string config_path, preset, output_format = "csv";
  std::vector<int> grid_inliers, grid_outliers;
  std::vector<double> grid_sigma;
  std::vector<std::string> methods{"atgm"};
  int trials = 10;
  std::uint64_t seed = 0;
  int max_n = 0;
  bool preprocess = false;
  sweep->add_option("--config", config_path, "JSON request file (replaces grid flags)")
      ->check(CLI::ExistingFile);
  sweep->add_option("--preset", preset, "Published benchmark grid")
      ->check(CLI::IsMember({"table1-noise", "table1-outliers"}));
  sweep->add_option("--max-n", max_n, "Drop preset sizes above this inlier count");
  sweep->add_option("--inliers", grid_inliers, "Inlier counts")->delimiter(',');
  sweep->add_option("--outliers", grid_outliers, "Outlier counts (default 0)")->delimiter(',');
  sweep->add_option("--sigma", grid_sigma, "Noise levels (default 0)")->delimiter(',');
  sweep->add_option("--trials", trials, "Trials per cell")->capture_default_str();
  sweep->add_option("--seed", seed, "Seed base")->capture_default_str();
  sweep->add_option("--methods", methods, "Methods to run")
      ->check(CLI::IsMember({"atgm", "spectral"}))
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_flag("--preprocess-removal", preprocess,
                  "Run the removal rounds before the chosen method");
  sweep->add_option("--affinity", affinity, "Spectral pair affinity kind")
      ->check(CLI::IsMember({"length_only", "angle_length"}))
      ->capture_default_str();
  sweep->add_option("--affinity-scale", affinity_scale, "Length-only denominator")
      ->capture_default_str();
  sweep->add_option("--readout", readout, "Spectral discretization")
      ->check(CLI::IsMember({"greedy", "hungarian"}))
      ->capture_default_str();
  sweep->add_option("--output", output_format, "Which artifact to emit")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep->add_option("--out", out_path, "Output file (default: stdout)");
  add_matcher_flags(sweep, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*match) {
    PointsPtr x, y;
    if (int rc = load_pair(src, dst, x, y)) return rc;
    atgm_options opt = flags.finalized();
    atgm_result* raw = nullptr;
    atgm_status st = atgm_match(x.get(), y.get(), &opt, &raw);
    if (st != ATGM_OK) return report(st);
    ResultPtr result(raw);
    return emit_result(result.get(), out_path, diag_path, truth_path);
  }

  if (*baseline) {
    PointsPtr x, y;
    if (int rc = load_pair(src, dst, x, y)) return rc;
    atgm_spectral_options opt;
    atgm_spectral_options_init(&opt);
    opt.affinity =
        affinity == "angle_length" ? ATGM_AFFINITY_ANGLE_LENGTH : ATGM_AFFINITY_LENGTH_ONLY;
    opt.scale = affinity_scale;
    opt.hungarian_readout = readout == "hungarian" ? 1 : 0;
    atgm_result* raw = nullptr;
    atgm_status st = atgm_spectral_match(x.get(), y.get(), &opt, &raw);
    if (st != ATGM_OK) return report(st);
    ResultPtr result(raw);
    return emit_result(result.get(), out_path, diag_path, truth_path);
  }

  if (*filter) {
    PointsPtr x, y;
    if (int rc = load_pair(src, dst, x, y)) return rc;
    atgm_options opt = flags.finalized();
    atgm_filter_result* raw = nullptr;
    atgm_status st = atgm_filter(x.get(), y.get(), &opt, &raw);
    if (st != ATGM_OK) return report(st);
    FilterPtr kept(raw);

    const int32_t count = atgm_filter_result_count(kept.get());
    std::vector<int32_t> indices(static_cast<std::size_t>(count));
    st = atgm_filter_result_indices(kept.get(), indices.data(), count);
    if (st != ATGM_OK) return report(st);
    std::ostringstream lines;
    for (int32_t i : indices) lines << i << "\n";
    std::string error;
    if (indices_path.empty()) {
      std::cout << lines.str();
    } else if (!write_text(indices_path, lines.str(), error)) {
      return report(error);
    }

    if (!out_path.empty()) {
      atgm_points* reduced_raw = nullptr;
      st = atgm_filter_result_points(kept.get(), &reduced_raw);
      if (st != ATGM_OK) return report(st);
      PointsPtr reduced(reduced_raw);
      st = atgm_points_save(reduced.get(), out_path.c_str());
      if (st != ATGM_OK) return report(st);
    }
    return 0;
  }

  // sweep
  std::string request;
  if (!config_path.empty()) {
    if (!preset.empty() || !grid_inliers.empty())
      return report("--config excludes --preset and grid flags");
    std::ifstream in(config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in) return report("cannot read '" + config_path + "'");
    request = buf.str();
  } else {
    std::vector<Cell> cells;
    if (!preset.empty()) {
      if (!grid_inliers.empty()) return report("--preset excludes --inliers");
      cells = preset_cells(preset, max_n);
    } else {
      if (grid_outliers.empty()) grid_outliers.push_back(0);
      if (grid_sigma.empty()) grid_sigma.push_back(0.0);
      for (int n : grid_inliers)
        for (int o : grid_outliers)
          for (double s : grid_sigma) cells.push_back({n, o, s});
    }
    if (cells.empty()) return report("empty sweep grid; give --inliers or --preset");
    request = sweep_request_json(cells, trials, seed, methods, preprocess, affinity,
                                 affinity_scale, readout == "hungarian", flags);
  }

  char* csv_raw = nullptr;
  char* summary_raw = nullptr;
  atgm_status st = atgm_sweep_run(request.c_str(), &csv_raw, &summary_raw);
  if (st != ATGM_OK) return report(st);
  StringPtr csv(csv_raw), summary(summary_raw);
  const std::string artifact(output_format == "json" ? summary.get() : csv.get());
  std::string error;
  if (out_path.empty()) {
    std::cout << artifact;
  } else if (!write_text(out_path, artifact, error)) {
    return report(error);
  }
  return 0;
}
