#include "msc/row_scaling.hpp"

#include <cmath>
#include <string>

namespace msc {

RowScaling scale_rows(const SparseMatrix& c, const std::vector<double>& b) {
  if (static_cast<int>(b.size()) != c.rows()) {
    throw std::invalid_argument("scale_rows: rhs length mismatch");
  }
  RowScaling r;
  r.matrix = c;
  r.rhs = b;
  r.scales.resize(c.rows());
  for (int i = 0; i < c.rows(); ++i) {
    auto vals = r.matrix.row_values(i);
    if (vals.empty()) {
      throw std::invalid_argument("scale_rows: row " + std::to_string(i) +
                                  " is identically zero");
    }
    double pivot = vals[0];
    for (double v : vals) {
      if (std::abs(v) > std::abs(pivot)) pivot = v;  // first max wins ties
    }
    r.scales[i] = pivot;
    r.matrix.divide_row(i, pivot);
    r.rhs[i] /= pivot;
  }
  return r;
}

}  // namespace msc
