#pragma once

#include <array>
#include <vector>

#include "types.hpp"

namespace atgm {

// Planar Delaunay triangulation; triangles come back counter-clockwise.
// Exactly cocircular configurations are resolved by insertion in index order
// with a strict in-circle test, so results are deterministic.
std::vector<std::array<int, 3>> delaunay_triangles(const PointSet& ps);

// Undirected triangulation edges, (i, j) with i < j, lexicographically sorted.
EdgeSet delaunay_edges(const PointSet& ps);

}  // namespace atgm
