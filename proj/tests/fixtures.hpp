#pragma once

// Shared test fixtures: grid Laplacians and the 16+16 worked-example
// system whose G- and D-side nodes are coupled pairwise by number.

#include <vector>

#include "msc/partitioned_matrix.hpp"
#include "msc/sparse_matrix.hpp"

namespace fixtures {

// 5-point Laplacian pattern on an nx x ny grid, row-major numbering.
inline msc::SparseMatrix grid_laplacian(int nx, int ny, double diag = 4.0,
                                        double off = -1.0) {
  std::vector<msc::Triplet> t;
  auto id = [nx](int i, int j) { return j * nx + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      t.push_back({id(i, j), id(i, j), diag});
      if (i + 1 < nx) {
        t.push_back({id(i, j), id(i + 1, j), off});
        t.push_back({id(i + 1, j), id(i, j), off});
      }
      if (j + 1 < ny) {
        t.push_back({id(i, j), id(i, j + 1), off});
        t.push_back({id(i, j + 1), id(i, j), off});
      }
    }
  }
  return msc::SparseMatrix::from_triplets(nx * ny, nx * ny, std::move(t));
}

// 16 D nodes and 16 G nodes, each side a 4x4 grid graph, with edges between
// same-numbered D and G nodes (E = I, F = -I).
inline msc::PartitionedMatrix worked_example_fixture() {
  msc::SparseMatrix d = grid_laplacian(4, 4, 4.0, -1.0);
  msc::SparseMatrix g = grid_laplacian(4, 4, 3.0, -0.5);
  std::vector<msc::Triplet> et, ft;
  for (int i = 0; i < 16; ++i) {
    et.push_back({i, i, 1.0});
    ft.push_back({i, i, -1.0});
  }
  return msc::PartitionedMatrix::from_blocks(
      d, msc::SparseMatrix::from_triplets(16, 16, std::move(et)),
      msc::SparseMatrix::from_triplets(16, 16, std::move(ft)), g);
}

}  // namespace fixtures
