#pragma once

/// \file matrix_market.hpp
/// Matrix Market coordinate I/O (real, general or symmetric) plus helpers
/// to assemble a partitioned system from files.

#include <filesystem>
#include <stdexcept>
#include <string>

#include "msc/partitioned_matrix.hpp"
#include "msc/sparse_matrix.hpp"

namespace msc {

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, int line = -1)
      : std::runtime_error(line >= 0 ? what + " (line " + std::to_string(line) + ")"
                                     : what),
        line(line) {}
  int line = -1;
};

/// Coordinate format, real values; symmetric storage is expanded. Indices
/// are converted from 1-based to 0-based and duplicates sum.
SparseMatrix load_matrix_market(const std::filesystem::path& path);

void write_matrix_market(const std::filesystem::path& path,
                         const SparseMatrix& a);

/// Vectors travel as n x 1 coordinate files.
std::vector<double> load_vector_market(const std::filesystem::path& path);
void write_vector_market(const std::filesystem::path& path,
                         std::span<const double> v);

/// Whole matrix plus the (1,1) dimension.
PartitionedMatrix load_partitioned(const std::filesystem::path& c_path, int p);
/// Four block files assembled into C = [D E; F G].
PartitionedMatrix load_partitioned(const std::filesystem::path& d_path,
                                   const std::filesystem::path& e_path,
                                   const std::filesystem::path& f_path,
                                   const std::filesystem::path& g_path);

}  // namespace msc
