#include "io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace atgm {

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& what) {
  fail(errc::parse, name + ":" + std::to_string(line) + ": " + what);
}

bool next_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

PointSet read_points(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno)) parse_fail(name, lineno, "missing 'dim count' header");

  std::istringstream header(line);
  long long d = 0, m = 0;
  std::string extra;
  if (!(header >> d >> m) || (header >> extra)) {
    parse_fail(name, lineno, "header must be exactly 'dim count'");
  }
  if (d < 1 || d > 16) parse_fail(name, lineno, "dimension out of range");
  if (m < 1 || m > 10'000'000) parse_fail(name, lineno, "point count out of range");

  PointSet ps;
  ps.coords.resize(m, d);
  for (long long i = 0; i < m; ++i) {
    if (!next_line(in, line, lineno)) {
      parse_fail(name, lineno, "expected " + std::to_string(m) + " points, got " +
                                   std::to_string(i));
    }
    std::istringstream row(line);
    for (long long j = 0; j < d; ++j) {
      double v;
      if (!(row >> v)) parse_fail(name, lineno, "expected " + std::to_string(d) + " coordinates");
      ps.coords(i, j) = v;
    }
    if (row >> extra) parse_fail(name, lineno, "trailing tokens after coordinates");
  }
  if (next_line(in, line, lineno)) parse_fail(name, lineno, "trailing content after last point");
  check_points(ps, name.c_str());
  return ps;
}

PointSet load_points(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io, "cannot open '" + path + "' for reading");
  return read_points(in, path);
}

void write_points(const PointSet& ps, std::ostream& out) {
  out << ps.dim() << ' ' << ps.count() << '\n';
  out.precision(std::numeric_limits<double>::max_digits10);
  for (int i = 0; i < ps.count(); ++i) {
    for (int j = 0; j < ps.dim(); ++j) {
      if (j) out << ' ';
      out << ps.coords(i, j);
    }
    out << '\n';
  }
}

void save_points(const PointSet& ps, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), errc::io, "cannot open '" + path + "' for writing");
  write_points(ps, out);
  out.flush();
  require(out.good(), errc::io, "failed writing '" + path + "'");
}

std::vector<std::pair<int, int>> load_pairs(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io, "cannot open '" + path + "' for reading");

  std::vector<std::pair<int, int>> pairs;
  std::string line;
  int lineno = 0;
  while (next_line(in, line, lineno)) {
    std::istringstream row(line);
    long long i = 0, j = 0;
    std::string extra;
    if (!(row >> i >> j) || (row >> extra)) {
      parse_fail(path, lineno, "expected exactly 'i j'");
    }
    if (i < 0 || j < 0) parse_fail(path, lineno, "indices must be non-negative");
    pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  return pairs;
}

void write_matching(const Matching& m, std::ostream& out) {
  for (int i = 0; i < m.size(); ++i) out << i << ' ' << m.target_of[i] << '\n';
}

void save_matching(const Matching& m, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), errc::io, "cannot open '" + path + "' for writing");
  write_matching(m, out);
  out.flush();
  require(out.good(), errc::io, "failed writing '" + path + "'");
}

Matching pairs_to_matching(const std::vector<std::pair<int, int>>& pairs, int source_count,
                           int target_count) {
  Matching m;
  m.target_of.assign(source_count, -1);
  for (auto [i, j] : pairs) {
    require(i < source_count, errc::parse,
            "pair source index " + std::to_string(i) + " out of range");
    require(j < target_count, errc::parse,
            "pair target index " + std::to_string(j) + " out of range");
    require(m.target_of[i] < 0, errc::parse,
            "source index " + std::to_string(i) + " listed twice");
    m.target_of[i] = j;
  }
  for (int i = 0; i < source_count; ++i) {
    require(m.target_of[i] >= 0, errc::parse,
            "source index " + std::to_string(i) + " has no pair");
  }
  check_matching(m, target_count, "pairs_to_matching");
  return m;
}

}  // namespace atgm
