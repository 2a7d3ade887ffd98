#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "atgm.h"

namespace {

struct Points {
  atgm_points* p = nullptr;
  ~Points() { atgm_points_free(p); }
};

struct Result {
  atgm_result* r = nullptr;
  ~Result() { atgm_result_free(r); }
};

struct Filter {
  atgm_filter_result* f = nullptr;
  ~Filter() { atgm_filter_result_free(f); }
};

// 2-d grid with distinct pairwise distances up to jitter.
std::vector<double> demo_coords(int count) {
  std::vector<double> coords;
  coords.reserve(2 * static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    coords.push_back(static_cast<double>(i % 5) + 0.13 * i);
    coords.push_back(static_cast<double>(i / 5) + 0.07 * ((i * i) % 11));
  }
  return coords;
}

void make_synthetic(int inliers, int outliers, double sigma, uint64_t seed, Points& x,
                    Points& y, std::vector<int32_t>& truth) {
  atgm_synthetic_spec spec{inliers, outliers, sigma, seed};
  truth.assign(static_cast<std::size_t>(inliers), -1);
  REQUIRE(atgm_synthetic_generate(&spec, &x.p, &y.p, truth.data(),
                                  static_cast<int32_t>(truth.size())) == ATGM_OK);
}

}  // namespace

TEST_CASE("version and status names are exposed") {
  CHECK(atgm_version() != nullptr);
  for (int s = 0; s <= 10; ++s) {
    const char* name = atgm_status_name(static_cast<atgm_status>(s));
    REQUIRE(name != nullptr);
    CHECK(std::strlen(name) > 0);
  }
  CHECK(std::string(atgm_status_name(ATGM_OK)) == "ok");
  CHECK(std::string(atgm_status_name(ATGM_ERROR_PARSE)) == "parse");
}

TEST_CASE("options initialize to the library defaults") {
  atgm_options opt;
  atgm_options_init(&opt);
  CHECK(opt.lambda == 1.0);
  CHECK(opt.lambda1 == 1e3);
  CHECK(opt.lambda2 == 1.0);
  CHECK(opt.epsilon == 1e-8);
  CHECK(opt.ratio_k == 1.5);
  CHECK(opt.rounds == -1);
  CHECK(opt.connectivity == ATGM_CONNECTIVITY_COMPLETE);
  CHECK(opt.unary == ATGM_UNARY_SHAPE_CONTEXT);
  CHECK(opt.removal_rule == ATGM_REMOVAL_UNION);
  CHECK(opt.drop_unary_first_round == 0);
  CHECK(opt.final_shift_stage == 1);
  CHECK(opt.validate_iterates == 0);
  CHECK(opt.shift_max_iters == 100);
  CHECK(opt.shift_rel_tol == 1e-7);
  CHECK(opt.edge_max_iters == 200);
  CHECK(opt.edge_rel_tol == 1e-9);

  atgm_spectral_options sopt;
  atgm_spectral_options_init(&sopt);
  CHECK(sopt.affinity == ATGM_AFFINITY_LENGTH_ONLY);
  CHECK(sopt.scale == 0.15);
  CHECK(sopt.hungarian_readout == 0);
  CHECK(sopt.max_iters == 1000);
  CHECK(sopt.tol == 1e-10);
}

TEST_CASE("points round trip through handles and files") {
  std::vector<double> coords = demo_coords(6);
  Points ps;
  REQUIRE(atgm_points_create(coords.data(), 6, 2, &ps.p) == ATGM_OK);
  CHECK(atgm_points_count(ps.p) == 6);
  CHECK(atgm_points_dim(ps.p) == 2);

  std::vector<double> back(coords.size(), 0.0);
  REQUIRE(atgm_points_copy_coords(ps.p, back.data(), static_cast<int32_t>(back.size())) ==
          ATGM_OK);
  CHECK(back == coords);
  CHECK(atgm_points_copy_coords(ps.p, back.data(), 3) != ATGM_OK);

  auto path = (std::filesystem::temp_directory_path() / "atgm_capi_points.txt").string();
  REQUIRE(atgm_points_save(ps.p, path.c_str()) == ATGM_OK);
  Points loaded;
  REQUIRE(atgm_points_load(path.c_str(), &loaded.p) == ATGM_OK);
  CHECK(atgm_points_count(loaded.p) == 6);
  std::filesystem::remove(path);
}

TEST_CASE("null and malformed arguments produce status codes and messages") {
  CHECK(atgm_points_create(nullptr, 3, 2, nullptr) == ATGM_ERROR_INVALID_ARGUMENT);
  CHECK(std::strlen(atgm_last_error()) > 0);

  std::vector<double> coords = demo_coords(2);
  Points ps;
  CHECK(atgm_points_create(coords.data(), 0, 2, &ps.p) == ATGM_ERROR_INVALID_ARGUMENT);

  atgm_result* out = nullptr;
  CHECK(atgm_match(nullptr, nullptr, nullptr, &out) == ATGM_ERROR_INVALID_ARGUMENT);
  CHECK(out == nullptr);

  Points missing;
  CHECK(atgm_points_load("/nonexistent/atgm.txt", &missing.p) == ATGM_ERROR_IO);
}

TEST_CASE("the matcher resolves a clean synthetic instance through the C surface") {
  Points x, y;
  std::vector<int32_t> truth;
  make_synthetic(15, 5, 0.0, 2024, x, y, truth);

  atgm_options opt;
  atgm_options_init(&opt);
  Result res;
  REQUIRE(atgm_match(x.p, y.p, &opt, &res.r) == ATGM_OK);
  REQUIRE(atgm_result_size(res.r) == 15);

  std::vector<int32_t> assignment(15, -1);
  REQUIRE(atgm_result_assignment(res.r, assignment.data(), 15) == ATGM_OK);
  CHECK(assignment == truth);

  double acc = 0.0;
  REQUIRE(atgm_result_accuracy(res.r, truth.data(), 15, &acc) == ATGM_OK);
  CHECK(acc == 1.0);

  double sparsity = 0.0;
  REQUIRE(atgm_result_sparsity(res.r, &sparsity) == ATGM_OK);
  CHECK(sparsity == 1.0);

  double qap = 0.0;
  CHECK(atgm_result_qap_score(res.r, &qap) == ATGM_ERROR_INVALID_ARGUMENT);

  char* raw = nullptr;
  REQUIRE(atgm_result_diagnostics_json(res.r, &raw) == ATGM_OK);
  auto parsed = nlohmann::json::parse(raw);
  atgm_string_free(raw);
  CHECK(parsed.contains("stages"));
  CHECK(parsed["stages"].is_array());
  CHECK(!parsed["stages"].empty());
  CHECK(parsed["sparsity"].get<double>() == 1.0);
  CHECK(parsed["matched"].size() == 15);
}

TEST_CASE("the spectral baseline runs through the C surface") {
  Points x, y;
  std::vector<int32_t> truth;
  make_synthetic(8, 0, 0.0, 31, x, y, truth);

  atgm_spectral_options opt;
  atgm_spectral_options_init(&opt);
  Result res;
  REQUIRE(atgm_spectral_match(x.p, y.p, &opt, &res.r) == ATGM_OK);
  CHECK(atgm_result_size(res.r) == 8);

  double qap = 0.0;
  REQUIRE(atgm_result_qap_score(res.r, &qap) == ATGM_OK);
  CHECK(qap > 0.0);
  double sparsity = 0.0;
  CHECK(atgm_result_sparsity(res.r, &sparsity) == ATGM_ERROR_INVALID_ARGUMENT);

  double acc = 0.0;
  REQUIRE(atgm_result_accuracy(res.r, truth.data(), 8, &acc) == ATGM_OK);
  CHECK(acc == 1.0);
}

TEST_CASE("the spectral baseline reports capacity overruns") {
  Points x, y;
  std::vector<int32_t> truth;
  make_synthetic(60, 0, 0.0, 8, x, y, truth);
  atgm_spectral_options opt;
  atgm_spectral_options_init(&opt);
  Result res;
  CHECK(atgm_spectral_match(x.p, y.p, &opt, &res.r) == ATGM_ERROR_CAPACITY);
}

TEST_CASE("the outlier filter exposes kept indices and reduced points") {
  Points x, y;
  std::vector<int32_t> truth;
  make_synthetic(12, 6, 0.0, 77, x, y, truth);

  atgm_options opt;
  atgm_options_init(&opt);
  Filter kept;
  REQUIRE(atgm_filter(x.p, y.p, &opt, &kept.f) == ATGM_OK);
  REQUIRE(atgm_filter_result_count(kept.f) == 12);

  std::vector<int32_t> indices(12, -1);
  REQUIRE(atgm_filter_result_indices(kept.f, indices.data(), 12) == ATGM_OK);
  std::vector<int32_t> expected(truth.begin(), truth.end());
  std::sort(expected.begin(), expected.end());
  CHECK(indices == expected);

  Points reduced;
  REQUIRE(atgm_filter_result_points(kept.f, &reduced.p) == ATGM_OK);
  CHECK(atgm_points_count(reduced.p) == 12);
  CHECK(atgm_points_dim(reduced.p) == 2);
}

TEST_CASE("synthetic generation validates the truth buffer") {
  atgm_synthetic_spec spec{10, 0, 0.0, 1};
  std::vector<int32_t> truth(4);
  atgm_points* x = nullptr;
  atgm_points* y = nullptr;
  CHECK(atgm_synthetic_generate(&spec, &x, &y, truth.data(), 4) ==
        ATGM_ERROR_INVALID_ARGUMENT);
  CHECK(x == nullptr);
  CHECK(y == nullptr);
}

TEST_CASE("sweeps run from a json request") {
  const char* request =
      R"({"cells":[{"inliers":8,"outliers":0,"sigma":0.0}],"trials":2,"seed":4})";
  char* csv = nullptr;
  char* summary = nullptr;
  REQUIRE(atgm_sweep_run(request, &csv, &summary) == ATGM_OK);
  std::string csv_text(csv);
  atgm_string_free(csv);
  CHECK(csv_text.rfind("inliers,outliers,sigma,", 0) == 0);

  auto parsed = nlohmann::json::parse(summary);
  atgm_string_free(summary);
  REQUIRE(parsed.contains("cells"));
  CHECK(parsed["cells"][0]["mean_accuracy"].get<double>() == 1.0);

  char* out = nullptr;
  CHECK(atgm_sweep_run("{broken", &out, nullptr) == ATGM_ERROR_PARSE);
  CHECK(atgm_sweep_run(nullptr, &out, nullptr) == ATGM_ERROR_INVALID_ARGUMENT);
}
