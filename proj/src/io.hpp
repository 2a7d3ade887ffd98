#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "types.hpp"

namespace atgm {

// Text format: header line "d m", then m lines of d coordinates each.
PointSet load_points(const std::string& path);
PointSet read_points(std::istream& in, const std::string& name);
void save_points(const PointSet& ps, const std::string& path);
void write_points(const PointSet& ps, std::ostream& out);

// Text format: one "i j" pair per line, 0-based, blank lines ignored.
std::vector<std::pair<int, int>> load_pairs(const std::string& path);
void save_matching(const Matching& m, const std::string& path);
void write_matching(const Matching& m, std::ostream& out);

// Pairs must cover each source row exactly once.
Matching pairs_to_matching(const std::vector<std::pair<int, int>>& pairs, int source_count,
                           int target_count);

}  // namespace atgm
