#pragma once

#include <utility>

#include "types.hpp"

namespace atgm {

// Rigid translate + single positive scale (largest axis range) into [0,1]^d.
PointSet normalize_points(const PointSet& ps);

// Same map, fitted to the union box and applied to both sets, so distances
// between the two sets stay meaningful.
std::pair<PointSet, PointSet> normalize_jointly(const PointSet& x, const PointSet& y);

Matrix pairwise_distances(const PointSet& ps);

// All m(m-1)/2 edges, weighted by inverse length.
GraphInstance complete_graph(const PointSet& ps);

EdgeWeights inverse_length_weights(const PointSet& ps, const EdgeSet& es);
EdgeWeights unit_weights(const EdgeSet& es);

// Two-means split of edge lengths (Lloyd from the min/max seeds, run to a
// fixed point); drops the longer cluster. Near-constant lengths are left
// untouched.
EdgeSet prune_edges_kmeans(const EdgeSet& es, const PointSet& ps);

// diag(S 1) - S
Matrix laplacian(const EdgeWeights& w);

// Rows of the result are the target-side images of the source nodes.
PointSet transform(const Matrix& p, const PointSet& y);

}  // namespace atgm
