#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bench.hpp"
#include "serialize.hpp"
#include "test_support.hpp"

using namespace atgm;
using namespace atgm::test;

TEST_CASE("synthetic instances have the requested shape") {
  SyntheticInstance inst = gen_synthetic({15, 7, 0.03, 5});
  CHECK(inst.x.count() == 15);
  CHECK(inst.x.dim() == 2);
  CHECK(inst.y.count() == 22);
  CHECK(inst.truth.size() == 15);
  CHECK(is_injective(inst.truth));
}

TEST_CASE("identical seeds reproduce instances bit for bit") {
  SyntheticInstance a = gen_synthetic({12, 3, 0.05, 99});
  SyntheticInstance b = gen_synthetic({12, 3, 0.05, 99});
  CHECK((a.x.coords - b.x.coords).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.y.coords - b.y.coords).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.truth.target_of == b.truth.target_of);

  SyntheticInstance c = gen_synthetic({12, 3, 0.05, 100});
  CHECK((a.x.coords - c.x.coords).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("zero noise places each copy exactly on its source") {
  SyntheticInstance inst = gen_synthetic({10, 5, 0.0, 7});
  for (int i = 0; i < 10; ++i) {
    CHECK((inst.y.coords.row(inst.truth.target_of[i]) - inst.x.coords.row(i))
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
}

TEST_CASE("synthetic specs are validated") {
  CHECK(error_code_of([] { gen_synthetic({1, 0, 0.0, 1}); }) == errc::invalid_argument);
  CHECK(error_code_of([] { gen_synthetic({5, -1, 0.0, 1}); }) == errc::invalid_argument);
  CHECK(error_code_of([] { gen_synthetic({5, 0, -0.1, 1}); }) == errc::invalid_argument);
}

TEST_CASE("a clean sweep cell reports perfect rows") {
  SweepRequest req;
  req.cells = {{30, 0, 0.0}};
  req.trials = 2;
  req.seed = 11;
  SweepResults res = run_sweep(req);
  REQUIRE(res.rows.size() == 2);
  for (const TrialRow& row : res.rows) {
    CHECK(!row.failed);
    CHECK(row.accuracy == 1.0);
    CHECK(row.sparsity == 1.0);
    CHECK(row.wall_time >= 0.0);
  }
  REQUIRE(res.cells.size() == 1);
  CHECK(res.cells[0].trials_ok == 2);
  CHECK(res.cells[0].mean_accuracy == 1.0);
}

TEST_CASE("sweeps are deterministic apart from wall time") {
  SweepRequest req;
  req.cells = {{8, 4, 0.02}};
  req.trials = 3;
  req.seed = 21;
  SweepResults a = run_sweep(req);
  SweepResults b = run_sweep(req);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k].accuracy == b.rows[k].accuracy);
    CHECK(a.rows[k].sparsity == b.rows[k].sparsity);
    CHECK(a.rows[k].seed == b.rows[k].seed);
  }
}

TEST_CASE("both methods see the same instance seeds") {
  SweepRequest req;
  req.cells = {{10, 0, 0.0}};
  req.trials = 2;
  req.seed = 33;
  req.methods = {Method::atgm, Method::spectral};
  SweepResults res = run_sweep(req);
  REQUIRE(res.rows.size() == 4);
  for (int t = 0; t < 2; ++t) {
    uint64_t atgm_seed = 0, spectral_seed = 1;
    for (const TrialRow& row : res.rows) {
      if (row.trial != t) continue;
      (row.method == Method::atgm ? atgm_seed : spectral_seed) = row.seed;
    }
    CHECK(atgm_seed == spectral_seed);
  }
  REQUIRE(res.cells.size() == 2);
}

TEST_CASE("spectral sparsity is reported as not-a-number") {
  SweepRequest req;
  req.cells = {{10, 0, 0.0}};
  req.trials = 1;
  req.seed = 3;
  req.methods = {Method::spectral};
  SweepResults res = run_sweep(req);
  REQUIRE(res.rows.size() == 1);
  CHECK(!res.rows[0].failed);
  CHECK(std::isnan(res.rows[0].sparsity));
  CHECK(res.rows[0].accuracy == doctest::Approx(1.0));
}

TEST_CASE("per-trial failures are recorded instead of thrown") {
  SweepRequest req;
  req.cells = {{60, 0, 0.02}};  // 3600 candidate assignments exceed capacity
  req.trials = 1;
  req.seed = 5;
  req.methods = {Method::spectral};
  SweepResults res = run_sweep(req);
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0].failed);
  CHECK(!res.rows[0].error.empty());
  CHECK(res.cells[0].trials_failed == 1);
}

TEST_CASE("csv output carries the documented header and one line per row") {
  SweepRequest req;
  req.cells = {{8, 0, 0.0}};
  req.trials = 2;
  req.seed = 1;
  SweepResults res = run_sweep(req);
  std::string csv = sweep_csv(res);
  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "inliers,outliers,sigma,method,trial,seed,accuracy,sparsity,wall_time,status");
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    CHECK(line.find("atgm") != std::string::npos);
    CHECK(line.substr(line.size() - 3) == ",ok");
  }
  CHECK(count == 2);
}

TEST_CASE("sweep requests parse from json with defaults filled in") {
  SweepRequest req = sweep_request_from_json(
      R"({"cells":[{"inliers":8,"outliers":2,"sigma":0.01}],"trials":4,"seed":9,
          "methods":["atgm","spectral"],"removal_preprocess":true,
          "affinity":"angle_length","affinity_scale":0.4,
          "options":{"lambda1":500.0,"rounds":1,"unary":"none",
                     "fw_shift":{"max_iters":50,"rel_tol":1e-6}}})");
  CHECK(req.cells.size() == 1);
  CHECK(req.cells[0].outliers == 2);
  CHECK(req.trials == 4);
  CHECK(req.seed == 9);
  CHECK(req.methods.size() == 2);
  CHECK(req.removal_preprocess);
  CHECK(req.affinity == AffinityKind::angle_length);
  CHECK(req.affinity_scale == 0.4);
  CHECK(req.config.lambda1 == 500.0);
  CHECK(req.config.rounds == 1);
  CHECK(req.config.unary == UnaryMode::none);
  CHECK(req.config.fw_shift.max_iters == 50);
  CHECK(req.config.lambda2 == 1.0);
}

TEST_CASE("malformed sweep requests are rejected as parse errors") {
  CHECK(error_code_of([] { sweep_request_from_json("not json"); }) == errc::parse);
  CHECK(error_code_of([] { sweep_request_from_json("{}"); }) == errc::parse);
  CHECK(error_code_of([] { sweep_request_from_json(R"({"cells":[]})"); }) == errc::parse);
  CHECK(error_code_of([] {
          sweep_request_from_json(R"({"cells":[{"inliers":5}],"methods":["bogus"]})");
        }) == errc::parse);
  CHECK(error_code_of([] {
          sweep_request_from_json(R"({"cells":[{"inliers":5}],"trials":"many"})");
        }) == errc::parse);
}

TEST_CASE("summary json reports per-cell aggregates") {
  SweepRequest req;
  req.cells = {{8, 0, 0.0}};
  req.trials = 2;
  req.seed = 2;
  SweepResults res = run_sweep(req);
  std::string summary = sweep_summary_json(req, res);
  CHECK(summary.find("\"cells\"") != std::string::npos);
  CHECK(summary.find("\"mean_accuracy\"") != std::string::npos);
}
