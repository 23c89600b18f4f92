#pragma once

/// \file row_scaling.hpp
/// Row equilibration: divide every row (and the rhs) by its entry of
/// largest magnitude.

#include <vector>

#include "msc/sparse_matrix.hpp"

namespace msc {

struct RowScaling {
  SparseMatrix matrix;
  std::vector<double> rhs;
  std::vector<double> scales;  // the signed divisors, one per row
};

/// Each row is divided by its signed entry of maximum magnitude (ties break
/// to the smallest column index), so every scaled row holds an entry equal
/// to one and nothing larger. The solution of the system is unchanged.
/// Throws on an empty row.
RowScaling scale_rows(const SparseMatrix& c, const std::vector<double>& b);

}  // namespace msc
