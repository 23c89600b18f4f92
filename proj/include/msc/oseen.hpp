#pragma once

/// \file oseen.hpp
/// Desk-scale Oseen problems: leaky lid driven cavity on a staggered
/// (marker-and-cell) grid, uniform or geometrically stretched, with
/// first-order upwinding of the convective term.

#include <vector>

#include "msc/partitioned_matrix.hpp"
#include "msc/preconditioner.hpp"

namespace msc {

enum class GridKind { Uniform, Stretched };
enum class WindKind { Recirculating, LidPicard };

/// Assembled saddle-point system C = [D E; F G] in the physics split
/// (velocities first, then cell pressures), with the constant-pressure
/// null space pinned at the last pressure unknown. The raw discretization
/// has G = 0 and F = -E^T; pinning adds the single identity row/column.
struct OseenProblem {
  int grid_n = 0;
  double viscosity = 0.0;
  GridKind grid = GridKind::Uniform;
  double stretch_factor = 1.0;
  WindKind wind = WindKind::Recirculating;

  PartitionedMatrix matrices;
  std::vector<double> rhs;
  PcdInputs aux;               // pressure Laplacian / convection-diffusion / mass
  std::vector<double> q_diag;  // velocity control-volume volumes
  int pin_index = -1;          // global index of the pinned pressure

  std::vector<double> x_lines, y_lines;  // cell boundaries, for diagnostics
};

/// grid_n >= 8 cells per side, viscosity > 0. The stretched grid uses
/// geometric spacing symmetric about the center (finer near the walls).
/// The recirculating wind is the analytic field w = (2y(1-x^2), -2x(1-y^2))
/// mapped onto the unit square; lid-picard instead performs two Picard
/// sweeps, re-assembling with the interpolated discrete velocity.
OseenProblem generate_oseen(int grid_n, double viscosity, GridKind grid,
                            WindKind wind, double stretch_factor = 1.056);

}  // namespace msc
