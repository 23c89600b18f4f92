#pragma once

/// \file gmres.hpp
/// Restarted GMRES with optional left or right preconditioning,
/// instrumented with residual history and timings.

#include <utility>
#include <vector>

#include "msc/preconditioner.hpp"
#include "msc/sparse_matrix.hpp"

namespace msc {

enum class PrecondSide { Left, Right };

struct SolverConfig {
  int restart = 300;
  int max_iters = 3000;
  double rel_tol = 1e-9;
  /// Right by default: residuals are then those of the unpreconditioned
  /// system and iteration counts stay comparable across preconditioners.
  PrecondSide side = PrecondSide::Right;
};

struct SolveReport {
  int iterations = 0;  // total inner steps across cycles
  bool converged = false;
  std::vector<double> residual_history;  // recurrence per step, true last
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
  double fill_factor = 0.0;
};

/// ||b - A x||_2 / ||b||_2; absolute when b = 0.
double true_residual(const SparseMatrix& a, std::span<const double> x,
                     std::span<const double> b);

/// Arnoldi with modified Gram-Schmidt and Givens least squares. Within a
/// cycle convergence is judged on the recurrence residual; the true
/// residual is re-evaluated at every restart and decides the final flag.
/// Arnoldi breakdown below 1e-14 returns the current iterate, converged iff
/// the true residual passes. `b` may be null for an unpreconditioned solve.
std::pair<std::vector<double>, SolveReport> gmres(const SparseMatrix& a,
                                                  const Preconditioner* b,
                                                  const std::vector<double>& rhs,
                                                  const SolverConfig& cfg);

}  // namespace msc
