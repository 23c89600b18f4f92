#pragma once

/// \file permutation.hpp
/// Index permutations and symmetric reordering of sparse matrices.

#include <vector>

#include "msc/sparse_matrix.hpp"

namespace msc {

/// Bijection on [0, n). `forward[k]` is the original index placed at
/// position k of the reordered numbering; `inverse` maps the other way, so
/// forward[inverse[i]] == i for every i.
struct Permutation {
  std::vector<int> forward;
  std::vector<int> inverse;

  static Permutation identity(int n);
  /// Build from the forward map, validating that it is a bijection.
  static Permutation from_forward(std::vector<int> fwd);

  int size() const { return static_cast<int>(forward.size()); }
  Permutation inverted() const { return {inverse, forward}; }
};

/// Symmetric reordering: result(i, j) = A(forward[i], forward[j]).
SparseMatrix permute(const SparseMatrix& a, const Permutation& p);

/// Row-only reordering: result(i, :) = A(forward[i], :).
SparseMatrix permute_rows(const SparseMatrix& a, const Permutation& p);

std::vector<double> permute_vector(std::span<const double> x,
                                   const Permutation& p);
/// Scatter a reordered vector back to the original numbering.
std::vector<double> unpermute_vector(std::span<const double> x,
                                     const Permutation& p);

}  // namespace msc
