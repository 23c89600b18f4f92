#pragma once

/// \file benchmark.hpp
/// Benchmark sweeps over (problem, method) cells: generate or load, scale
/// rows, partition, build, solve, and emit table rows.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "msc/gmres.hpp"
#include "msc/oseen.hpp"

namespace msc {

struct ProblemSpec {
  // Generated problem...
  int grid_n = 0;
  double nu = 0.1;
  GridKind grid = GridKind::Uniform;
  double stretch = 1.056;
  WindKind wind = WindKind::Recirculating;
  // ...or matrices loaded from disk (matrix_path non-empty).
  std::string matrix_path;
  std::string rhs_path;  // optional; ones when absent
  int split = 0;         // (1,1) dimension of a loaded matrix

  std::string label() const;
};

struct MethodSpec {
  std::string name;  // msc variant, "exact-schur", "pcd", "lsc", or "none"
  int sz = 0;        // aggregate size; 0 = n_g/8
  int overlap = -1;  // overlapped variants; -1 = sz (clipped to the bound)
  int radius = 1;    // edge variants
  int nA = 4;        // target interior blocks of the (1,1) block
  double tolA = 1e-4;
  int sA = 400;      // exact-factor threshold for (1,1) blocks
};

struct BenchmarkSpec {
  std::vector<ProblemSpec> problems;
  std::vector<MethodSpec> methods;
  SolverConfig solver;
  SaddleOrdering ordering = SaddleOrdering::Interleaved;
  std::string output = "results.csv";
  std::string format = "csv";  // or "json"
  bool spectra = false;
  int workers = 1;               // (problem, method) cells in flight
  int construction_workers = 0;  // 0 = MSBENCH_THREADS / hardware

  void validate() const;
};

BenchmarkSpec parse_benchmark_spec(const std::filesystem::path& json_path);

struct BenchmarkRow {
  std::string problem;
  std::string method;
  double nu = 0.0;
  int sz = 0;
  int nA = 0;  // achieved interior block count
  int nS = 0;  // independent Schur computations
  int iterations = 0;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
  double fill = 0.0;
  std::string status;  // "ok", "NC", or "error: ..."
};

std::vector<BenchmarkRow> run_benchmark(const BenchmarkSpec& spec);

std::string rows_to_csv(const std::vector<BenchmarkRow>& rows);
std::string rows_to_json(const std::vector<BenchmarkRow>& rows);

/// Write-then-rename so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

}  // namespace msc
