#pragma once

#include "types.hpp"

namespace atgm {

// Fraction of source nodes matched to their ground-truth target.
double accuracy(const Matching& found, const Matching& truth);

// Fraction of rows holding an entry >= r; r > 0.5 so at most one entry per
// row can qualify.
double sparsity_index(const Matrix& p, double r);

}  // namespace atgm
