#include <doctest.h>

#include "lap.hpp"
#include "test_support.hpp"

using namespace atgm;
using namespace atgm::test;

TEST_CASE("solve_lap picks the cheapest assignment on hand examples") {
  Matrix c(2, 2);
  c << 1, 2, 2, 1;
  LapResult r = solve_lap(c);
  CHECK(r.assignment.target_of == std::vector<int>{0, 1});
  CHECK(r.cost == doctest::Approx(2.0));

  Matrix c3(3, 3);
  c3 << 4, 1, 3, 2, 0, 5, 3, 2, 2;
  LapResult r3 = solve_lap(c3);
  CHECK(r3.assignment.target_of == std::vector<int>{1, 0, 2});
  CHECK(r3.cost == doctest::Approx(5.0));
}

TEST_CASE("solve_lap handles rectangular and negative costs") {
  Matrix c(2, 4);
  c << 9, 9, 0, 9, 9, 9, 9, -3;
  LapResult r = solve_lap(c);
  CHECK(r.assignment.target_of == std::vector<int>{2, 3});
  CHECK(r.cost == doctest::Approx(-3.0));

  Matrix neg(2, 2);
  neg << -5, 0, 0, -5;
  CHECK(solve_lap(neg).cost == doctest::Approx(-10.0));
}

TEST_CASE("brute_force_lap breaks ties toward the lexicographically smallest map") {
  Matrix zeros = Matrix::Zero(2, 3);
  CHECK(brute_force_lap(zeros).assignment.target_of == std::vector<int>{0, 1});
}

TEST_CASE("solve_lap matches exhaustive search on random integer costs") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 1 + static_cast<int>(rng.below(7));
    int n = m + static_cast<int>(rng.below(static_cast<uint64_t>(8 - m)));
    Matrix c(m, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) c(i, j) = static_cast<double>(rng.below(10));
    }
    LapResult fast = solve_lap(c);
    LapResult slow = brute_force_lap(c);
    REQUIRE(fast.cost == slow.cost);
    CHECK(is_injective(fast.assignment));
    double recomputed = 0.0;
    for (int i = 0; i < m; ++i) recomputed += c(i, fast.assignment.target_of[i]);
    CHECK(recomputed == fast.cost);
  }
}

TEST_CASE("solve_lap is deterministic") {
  Rng rng(9);
  Matrix c(5, 7);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 7; ++j) c(i, j) = rng.uniform(-1.0, 1.0);
  }
  LapResult a = solve_lap(c);
  LapResult b = solve_lap(c);
  CHECK(a.assignment.target_of == b.assignment.target_of);
  CHECK(a.cost == b.cost);
}

TEST_CASE("solve_lap validates its input") {
  CHECK(error_code_of([] { solve_lap(Matrix::Zero(3, 2)); }) == errc::shape);
  CHECK(error_code_of([] { solve_lap(Matrix(0, 0)); }) == errc::shape);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK(error_code_of([&] { solve_lap(bad); }) == errc::invalid_argument);
  CHECK(error_code_of([] { brute_force_lap(Matrix::Zero(2, 9)); }) == errc::capacity);
}
