#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "io.hpp"
#include "test_support.hpp"

using namespace atgm;
using namespace atgm::test;

namespace {

PointSet parse(const std::string& text) {
  std::istringstream in(text);
  return read_points(in, "mem");
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("points survive a write/read round trip exactly") {
  PointSet ps = make_points({{0.1, -2.5}, {1.0 / 3.0, 1e-17}, {12345.6789, -0.0625}});
  std::stringstream buf;
  write_points(ps, buf);
  PointSet back = read_points(buf, "mem");
  REQUIRE(back.count() == 3);
  REQUIRE(back.dim() == 2);
  CHECK((back.coords - ps.coords).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("point files round trip on disk") {
  PointSet ps = make_points({{1.5, 2.5, 3.5}, {-1.0, 0.0, 4.0}});
  auto path = scratch("atgm_io_points.txt");
  save_points(ps, path.string());
  PointSet back = load_points(path.string());
  CHECK(back.dim() == 3);
  CHECK((back.coords - ps.coords).cwiseAbs().maxCoeff() == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("point parser accepts blank lines and flexible spacing") {
  PointSet ps = parse("2 2\n\n  0 1 \n\t2\t3\n");
  CHECK(ps.coords(0, 1) == 1.0);
  CHECK(ps.coords(1, 0) == 2.0);
}

TEST_CASE("point parser rejects malformed input") {
  CHECK(error_code_of([] { parse(""); }) == errc::parse);
  CHECK(error_code_of([] { parse("2\n0 0\n"); }) == errc::parse);
  CHECK(error_code_of([] { parse("2 1 7\n0 0\n"); }) == errc::parse);
  CHECK(error_code_of([] { parse("0 3\n"); }) == errc::parse);
  CHECK(error_code_of([] { parse("17 1\n0\n"); }) == errc::parse);
  CHECK(error_code_of([] { parse("2 0\n"); }) == errc::parse);
  CHECK(error_code_of([] { parse("2 2\n0 0\n"); }) == errc::parse);
  CHECK(error_code_of([] { parse("2 1\n0\n"); }) == errc::parse);
  CHECK(error_code_of([] { parse("2 1\n0 0 0\n"); }) == errc::parse);
  CHECK(error_code_of([] { parse("2 1\n0 0\n1 1\n"); }) == errc::parse);
  CHECK(error_code_of([] { parse("2 1\nx y\n"); }) == errc::parse);
}

TEST_CASE("parse errors carry the stream name and line number") {
  try {
    parse("2 2\n0 0\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("mem:") != std::string::npos);
  }
}

TEST_CASE("missing files raise io errors") {
  CHECK(error_code_of([] { load_points("/nonexistent/atgm.txt"); }) == errc::io);
  CHECK(error_code_of([] { load_pairs("/nonexistent/atgm.txt"); }) == errc::io);
}

TEST_CASE("pair files parse and validate") {
  auto path = scratch("atgm_io_pairs.txt");
  {
    std::ofstream out(path);
    out << "0 2\n\n1 0\n2 1\n";
  }
  auto pairs = load_pairs(path.string());
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0] == std::pair<int, int>(0, 2));

  Matching m = pairs_to_matching(pairs, 3, 3);
  CHECK(m.target_of == std::vector<int>{2, 0, 1});
  std::filesystem::remove(path);
}

TEST_CASE("pair parser rejects malformed lines") {
  auto path = scratch("atgm_io_bad_pairs.txt");
  auto write = [&](const std::string& text) {
    std::ofstream out(path);
    out << text;
  };
  write("0\n");
  CHECK(error_code_of([&] { load_pairs(path.string()); }) == errc::parse);
  write("0 1 2\n");
  CHECK(error_code_of([&] { load_pairs(path.string()); }) == errc::parse);
  write("-1 0\n");
  CHECK(error_code_of([&] { load_pairs(path.string()); }) == errc::parse);
  std::filesystem::remove(path);
}

TEST_CASE("pairs_to_matching rejects bad covers") {
  using P = std::vector<std::pair<int, int>>;
  CHECK(error_code_of([] { pairs_to_matching(P{{0, 0}, {2, 1}}, 2, 2); }) == errc::parse);
  CHECK(error_code_of([] { pairs_to_matching(P{{0, 0}, {1, 3}}, 2, 2); }) == errc::parse);
  CHECK(error_code_of([] { pairs_to_matching(P{{0, 0}, {0, 1}}, 2, 2); }) == errc::parse);
  CHECK(error_code_of([] { pairs_to_matching(P{{0, 0}}, 2, 2); }) == errc::parse);
  CHECK(error_code_of([] { pairs_to_matching(P{{0, 1}, {1, 1}}, 2, 2); }) ==
        errc::invalid_argument);
}

TEST_CASE("matchings write one source-target line per node") {
  Matching m;
  m.target_of = {2, 0, 1};
  std::ostringstream out;
  write_matching(m, out);
  CHECK(out.str() == "0 2\n1 0\n2 1\n");
}
