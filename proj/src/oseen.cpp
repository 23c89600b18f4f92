#include "msc/oseen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "msc/aggregates.hpp"
#include "msc/gmres.hpp"
#include "msc/row_scaling.hpp"
#include "msc/schur_approx.hpp"

namespace msc {

namespace {

using WindField = std::function<std::array<double, 2>(double, double)>;

std::vector<double> cell_widths(int n, GridKind kind, double factor) {
  std::vector<double> w(n, 1.0 / n);
  if (kind == GridKind::Stretched) {
    const int half = n / 2;
    for (int k = 0; k < half; ++k) {
      w[k] = std::pow(factor, k);
      w[n - 1 - k] = w[k];
    }
    if (n % 2 == 1) w[half] = std::pow(factor, half);
    double total = 0.0;
    for (double wi : w) total += wi;
    for (double& wi : w) wi /= total;
  }
  return w;
}

struct Grid {
  int n = 0;
  std::vector<double> x, y;    // cell boundaries, size n+1
  std::vector<double> xc, yc;  // cell centers, size n

  int nu_per_comp() const { return n * (n - 1); }
  int velocity_count() const { return 2 * nu_per_comp(); }
  int pressure_count() const { return n * n; }

  // u at (x[i], yc[j]), i in [1, n-1], j in [0, n-1]
  int iu(int i, int j) const { return (i - 1) + j * (n - 1); }
  // v at (xc[i], y[j]), i in [0, n-1], j in [1, n-1]
  int iv(int i, int j) const { return nu_per_comp() + i + (j - 1) * n; }
  // pressure (local to the block) at cell (i, j)
  int ip(int i, int j) const { return i + j * n; }
};

Grid make_grid(int n, GridKind kind, double factor) {
  Grid g;
  g.n = n;
  std::vector<double> wx = cell_widths(n, kind, factor);
  g.x.assign(1, 0.0);
  for (int i = 0; i < n; ++i) g.x.push_back(g.x.back() + wx[i]);
  g.x.back() = 1.0;
  g.y = g.x;  // square cavity, same spacing both ways
  for (int i = 0; i < n; ++i) {
    g.xc.push_back(0.5 * (g.x[i] + g.x[i + 1]));
    g.yc.push_back(0.5 * (g.y[i] + g.y[i + 1]));
  }
  return g;
}

struct Assembly {
  std::vector<Triplet> d, e, f, g;
  std::vector<double> rhs;
};

// One momentum-equation neighbor: either an unknown column or a boundary
// value folded into the right-hand side.
struct Neighbor {
  int col = -1;        // unknown index, or -1 for a boundary value
  double value = 0.0;  // boundary value when col < 0
  double dist = 0.0;   // node distance
  double face = 0.0;   // face length for the diffusive flux
};

void add_diffusion(std::vector<Triplet>& block, std::vector<double>& rhs,
                   int row, double nu, const Neighbor& nb, double& diag) {
  const double t = nu * nb.face / nb.dist;
  diag += t;
  if (nb.col >= 0) {
    block.push_back({row, nb.col, -t});
  } else {
    rhs[row] += t * nb.value;
  }
}

// First-order upwind convection, integrated over the control volume.
void add_convection(std::vector<Triplet>& block, std::vector<double>& rhs,
                    int row, double speed, double volume, const Neighbor& up,
                    bool upstream_is_low, double& diag) {
  if (speed == 0.0) return;
  const bool use_low = speed > 0.0;
  if (use_low != upstream_is_low) return;  // handled by the other side's call
  const double c = std::abs(speed) * volume / up.dist;
  diag += c;
  if (up.col >= 0) {
    block.push_back({row, up.col, -c});
  } else {
    rhs[row] += c * up.value;
  }
}

Assembly assemble(const Grid& g, double nu, const WindField& wind) {
  const int n = g.n;
  Assembly a;
  const int p = g.velocity_count();
  a.rhs.assign(p + g.pressure_count(), 0.0);

  // u-momentum rows.
  for (int j = 0; j < n; ++j) {
    for (int i = 1; i <= n - 1; ++i) {
      const int row = g.iu(i, j);
      const double wx = g.xc[i] - g.xc[i - 1];
      const double hy = g.y[j + 1] - g.y[j];
      const double vol = wx * hy;
      const auto [w1, w2] = wind(g.x[i], g.yc[j]);

      Neighbor west{i - 1 >= 1 ? g.iu(i - 1, j) : -1, 0.0, g.x[i] - g.x[i - 1], hy};
      Neighbor east{i + 1 <= n - 1 ? g.iu(i + 1, j) : -1, 0.0, g.x[i + 1] - g.x[i], hy};
      Neighbor south{j - 1 >= 0 ? g.iu(i, j - 1) : -1, 0.0,
                     j - 1 >= 0 ? g.yc[j] - g.yc[j - 1] : g.yc[j], wx};
      // The leaky lid drives the top row: u = 1 on y = 1 across the whole lid.
      Neighbor north{j + 1 <= n - 1 ? g.iu(i, j + 1) : -1, 1.0,
                     j + 1 <= n - 1 ? g.yc[j + 1] - g.yc[j] : 1.0 - g.yc[n - 1], wx};

      double diag = 0.0;
      add_diffusion(a.d, a.rhs, row, nu, west, diag);
      add_diffusion(a.d, a.rhs, row, nu, east, diag);
      add_diffusion(a.d, a.rhs, row, nu, south, diag);
      add_diffusion(a.d, a.rhs, row, nu, north, diag);
      add_convection(a.d, a.rhs, row, w1, vol, west, true, diag);
      add_convection(a.d, a.rhs, row, w1, vol, east, false, diag);
      add_convection(a.d, a.rhs, row, w2, vol, south, true, diag);
      add_convection(a.d, a.rhs, row, w2, vol, north, false, diag);
      a.d.push_back({row, row, diag});

      a.e.push_back({row, g.ip(i, j), hy});
      a.e.push_back({row, g.ip(i - 1, j), -hy});
    }
  }

  // v-momentum rows.
  for (int j = 1; j <= n - 1; ++j) {
    for (int i = 0; i < n; ++i) {
      const int row = g.iv(i, j);
      const double wx = g.x[i + 1] - g.x[i];
      const double hy = g.yc[j] - g.yc[j - 1];
      const double vol = wx * hy;
      const auto [w1, w2] = wind(g.xc[i], g.y[j]);

      Neighbor west{i - 1 >= 0 ? g.iv(i - 1, j) : -1, 0.0,
                    i - 1 >= 0 ? g.xc[i] - g.xc[i - 1] : g.xc[0], hy};
      Neighbor east{i + 1 <= n - 1 ? g.iv(i + 1, j) : -1, 0.0,
                    i + 1 <= n - 1 ? g.xc[i + 1] - g.xc[i] : 1.0 - g.xc[n - 1], hy};
      Neighbor south{j - 1 >= 1 ? g.iv(i, j - 1) : -1, 0.0, g.y[j] - g.y[j - 1], wx};
      Neighbor north{j + 1 <= n - 1 ? g.iv(i, j + 1) : -1, 0.0, g.y[j + 1] - g.y[j], wx};

      double diag = 0.0;
      add_diffusion(a.d, a.rhs, row, nu, west, diag);
      add_diffusion(a.d, a.rhs, row, nu, east, diag);
      add_diffusion(a.d, a.rhs, row, nu, south, diag);
      add_diffusion(a.d, a.rhs, row, nu, north, diag);
      add_convection(a.d, a.rhs, row, w1, vol, west, true, diag);
      add_convection(a.d, a.rhs, row, w1, vol, east, false, diag);
      add_convection(a.d, a.rhs, row, w2, vol, south, true, diag);
      add_convection(a.d, a.rhs, row, w2, vol, north, false, diag);
      a.d.push_back({row, row, diag});

      a.e.push_back({row, g.ip(i, j), wx});
      a.e.push_back({row, g.ip(i, j - 1), -wx});
    }
  }

  // Continuity rows in flux form, so that F = -E^T exactly on any grid.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int row = g.ip(i, j);
      const double dx = g.x[i + 1] - g.x[i];
      const double dy = g.y[j + 1] - g.y[j];
      if (i + 1 <= n - 1) a.f.push_back({row, g.iu(i + 1, j), dy});
      if (i >= 1) a.f.push_back({row, g.iu(i, j), -dy});
      if (j + 1 <= n - 1) a.f.push_back({row, g.iv(i, j + 1), dx});
      if (j >= 1) a.f.push_back({row, g.iv(i, j), -dx});
    }
  }
  return a;
}

// Pin the last pressure unknown: drop its couplings and place a unit
// diagonal, fixing the constant-pressure mode of the enclosed cavity.
void pin_pressure(Assembly& a, int np) {
  const int pin = np - 1;
  std::erase_if(a.e, [pin](const Triplet& t) { return t.col == pin; });
  std::erase_if(a.f, [pin](const Triplet& t) { return t.row == pin; });
  std::erase_if(a.g, [pin](const Triplet& t) { return t.row == pin || t.col == pin; });
  a.g.push_back({pin, pin, 1.0});
}

PartitionedMatrix to_partitioned(const Grid& g, Assembly a) {
  const int p = g.velocity_count();
  const int np = g.pressure_count();
  return PartitionedMatrix::from_blocks(
      SparseMatrix::from_triplets(p, p, std::move(a.d)),
      SparseMatrix::from_triplets(p, np, std::move(a.e)),
      SparseMatrix::from_triplets(np, p, std::move(a.f)),
      SparseMatrix::from_triplets(np, np, std::move(a.g)));
}

// Bilinear sampling of a discrete MAC velocity field, boundary values
// included, for the Picard wind.
class MacField {
 public:
  MacField(const Grid& g, const std::vector<double>& sol) {
    const int n = g.n;
    ux_.assign(g.x.begin(), g.x.end());
    uy_.push_back(0.0);
    uy_.insert(uy_.end(), g.yc.begin(), g.yc.end());
    uy_.push_back(1.0);
    uval_.assign(ux_.size() * uy_.size(), 0.0);
    for (std::size_t ix = 0; ix < ux_.size(); ++ix) {
      uval_[idx(ix, uy_.size() - 1, uy_.size())] = 1.0;  // leaky lid
    }
    for (int i = 1; i <= n - 1; ++i) {
      for (int j = 0; j < n; ++j) {
        uval_[idx(i, j + 1, uy_.size())] = sol[g.iu(i, j)];
      }
    }

    vx_.push_back(0.0);
    vx_.insert(vx_.end(), g.xc.begin(), g.xc.end());
    vx_.push_back(1.0);
    vy_.assign(g.y.begin(), g.y.end());
    vval_.assign(vx_.size() * vy_.size(), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 1; j <= n - 1; ++j) {
        vval_[idx(i + 1, j, vy_.size())] = sol[g.iv(i, j)];
      }
    }
  }

  std::array<double, 2> operator()(double x, double y) const {
    return {interp(ux_, uy_, uval_, x, y), interp(vx_, vy_, vval_, x, y)};
  }

 private:
  static std::size_t idx(std::size_t ix, std::size_t iy, std::size_t ny) {
    return ix * ny + iy;
  }
  static double interp(const std::vector<double>& xs,
                       const std::vector<double>& ys,
                       const std::vector<double>& vals, double x, double y) {
    x = std::clamp(x, xs.front(), xs.back());
    y = std::clamp(y, ys.front(), ys.back());
    const auto hi_x = std::upper_bound(xs.begin() + 1, xs.end() - 1, x);
    const auto hi_y = std::upper_bound(ys.begin() + 1, ys.end() - 1, y);
    const std::size_t ix = (hi_x - xs.begin()) - 1;
    const std::size_t iy = (hi_y - ys.begin()) - 1;
    const double tx = (x - xs[ix]) / (xs[ix + 1] - xs[ix]);
    const double ty = (y - ys[iy]) / (ys[iy + 1] - ys[iy]);
    const std::size_t ny = ys.size();
    const double v00 = vals[idx(ix, iy, ny)];
    const double v10 = vals[idx(ix + 1, iy, ny)];
    const double v01 = vals[idx(ix, iy + 1, ny)];
    const double v11 = vals[idx(ix + 1, iy + 1, ny)];
    return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 +
           (1 - tx) * ty * v01 + tx * ty * v11;
  }

  std::vector<double> ux_, uy_, uval_;
  std::vector<double> vx_, vy_, vval_;
};

// One linear cavity solve for the Picard sweeps.
std::vector<double> solve_for_wind(const PartitionedMatrix& pm,
                                   const std::vector<double>& rhs) {
  RowScaling scaled = scale_rows(pm.C, rhs);
  SaddleReorder reorder =
      partition_saddle(scaled.matrix, pm.p, 4, SaddleOrdering::Interleaved);
  const int n_gs = reorder.matrix.n_g();
  const int sz = n_gs < 16 ? n_gs : n_gs / 8;
  AggregateSet agg = aggregate_by_numbering(n_gs, equal_sizes(n_gs, sz));
  SchurApproximation shat = build_msc(reorder.matrix, agg, MscVariant::Mscn);
  MscPreconditioner b =
      build_preconditioner(reorder.matrix, shat, 1e-4, 1 << 16);
  SolverConfig cfg;
  cfg.restart = 200;
  cfg.max_iters = 2000;
  cfg.rel_tol = 1e-8;
  auto [xp, report] =
      gmres(reorder.matrix.C, &b, permute_vector(scaled.rhs, reorder.perm), cfg);
  if (!report.converged) {
    throw std::runtime_error("generate_oseen: Picard sweep did not converge");
  }
  return unpermute_vector(xp, reorder.perm);
}

PcdInputs build_aux(const Grid& g, double nu, const WindField& wind, int pin) {
  const int n = g.n;
  const int np = g.pressure_count();
  std::vector<Triplet> ap, dp;
  std::vector<double> qp(np, 0.0);

  auto laplace_face = [&](std::vector<Triplet>& out, int c0, int c1, double t,
                          double scale) {
    out.push_back({c0, c0, scale * t});
    out.push_back({c1, c1, scale * t});
    out.push_back({c0, c1, -scale * t});
    out.push_back({c1, c0, -scale * t});
  };

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int c = g.ip(i, j);
      const double dx = g.x[i + 1] - g.x[i];
      const double dy = g.y[j + 1] - g.y[j];
      qp[c] = dx * dy;
      if (i + 1 < n) {
        const double t = dy / (g.xc[i + 1] - g.xc[i]);
        laplace_face(ap, c, g.ip(i + 1, j), t, 1.0);
        laplace_face(dp, c, g.ip(i + 1, j), t, nu);
      }
      if (j + 1 < n) {
        const double t = dx / (g.yc[j + 1] - g.yc[j]);
        laplace_face(ap, c, g.ip(i, j + 1), t, 1.0);
        laplace_face(dp, c, g.ip(i, j + 1), t, nu);
      }
      // Upwind convection on the pressure grid with the same wind.
      const auto [w1, w2] = wind(g.xc[i], g.yc[j]);
      const double vol = dx * dy;
      if (w1 > 0.0 && i - 1 >= 0) {
        const double cc = w1 * vol / (g.xc[i] - g.xc[i - 1]);
        dp.push_back({c, c, cc});
        dp.push_back({c, g.ip(i - 1, j), -cc});
      } else if (w1 < 0.0 && i + 1 < n) {
        const double cc = -w1 * vol / (g.xc[i + 1] - g.xc[i]);
        dp.push_back({c, c, cc});
        dp.push_back({c, g.ip(i + 1, j), -cc});
      }
      if (w2 > 0.0 && j - 1 >= 0) {
        const double cc = w2 * vol / (g.yc[j] - g.yc[j - 1]);
        dp.push_back({c, c, cc});
        dp.push_back({c, g.ip(i, j - 1), -cc});
      } else if (w2 < 0.0 && j + 1 < n) {
        const double cc = -w2 * vol / (g.yc[j + 1] - g.yc[j]);
        dp.push_back({c, c, cc});
        dp.push_back({c, g.ip(i, j + 1), -cc});
      }
    }
  }

  auto pin_block = [pin](std::vector<Triplet>& t) {
    std::erase_if(t, [pin](const Triplet& e) { return e.row == pin || e.col == pin; });
    t.push_back({pin, pin, 1.0});
  };
  pin_block(ap);
  pin_block(dp);
  qp[pin] = 1.0;

  PcdInputs aux;
  aux.A_p = SparseMatrix::from_triplets(np, np, std::move(ap));
  aux.D_p = SparseMatrix::from_triplets(np, np, std::move(dp));
  aux.Q_p = SparseMatrix::diagonal(qp);
  return aux;
}

}  // namespace

OseenProblem generate_oseen(int grid_n, double viscosity, GridKind grid,
                            WindKind wind, double stretch_factor) {
  if (grid_n < 8) {
    throw std::invalid_argument("generate_oseen: grid_n must be >= 8");
  }
  if (!(viscosity > 0.0)) {
    throw std::invalid_argument("generate_oseen: viscosity must be positive");
  }
  if (grid == GridKind::Stretched && !(stretch_factor > 1.0)) {
    throw std::invalid_argument("generate_oseen: stretch factor must exceed 1");
  }

  const Grid g = make_grid(grid_n, grid, stretch_factor);
  WindField recirculating = [](double x, double y) -> std::array<double, 2> {
    const double xh = 2.0 * x - 1.0;
    const double yh = 2.0 * y - 1.0;
    return {2.0 * yh * (1.0 - xh * xh), -2.0 * xh * (1.0 - yh * yh)};
  };

  WindField active = recirculating;
  if (wind == WindKind::LidPicard) {
    // Stokes start, then two Picard updates with the interpolated field.
    WindField zero = [](double, double) -> std::array<double, 2> {
      return {0.0, 0.0};
    };
    WindField sweep_wind = zero;
    for (int sweep = 0; sweep < 2; ++sweep) {
      Assembly sweep_a = assemble(g, viscosity, sweep_wind);
      pin_pressure(sweep_a, g.pressure_count());
      std::vector<double> sweep_rhs = sweep_a.rhs;
      PartitionedMatrix pm = to_partitioned(g, std::move(sweep_a));
      sweep_wind = MacField(g, solve_for_wind(pm, sweep_rhs));
    }
    active = sweep_wind;
  }

  Assembly a = assemble(g, viscosity, active);
  pin_pressure(a, g.pressure_count());

  OseenProblem prob;
  prob.grid_n = grid_n;
  prob.viscosity = viscosity;
  prob.grid = grid;
  prob.stretch_factor = grid == GridKind::Stretched ? stretch_factor : 1.0;
  prob.wind = wind;
  prob.pin_index = g.velocity_count() + g.pressure_count() - 1;
  prob.x_lines = g.x;
  prob.y_lines = g.y;

  for (int j = 0; j < grid_n; ++j) {
    for (int i = 1; i <= grid_n - 1; ++i) {
      prob.q_diag.push_back((g.xc[i] - g.xc[i - 1]) * (g.y[j + 1] - g.y[j]));
    }
  }
  // q_diag follows unknown numbering: all u rows, then all v rows.
  std::vector<double> v_vols;
  for (int j = 1; j <= grid_n - 1; ++j) {
    for (int i = 0; i < grid_n; ++i) {
      v_vols.push_back((g.x[i + 1] - g.x[i]) * (g.yc[j] - g.yc[j - 1]));
    }
  }
  prob.q_diag.insert(prob.q_diag.end(), v_vols.begin(), v_vols.end());

  std::vector<double> rhs = a.rhs;
  prob.matrices = to_partitioned(g, std::move(a));
  prob.rhs = std::move(rhs);
  prob.aux = build_aux(g, viscosity, active, g.pressure_count() - 1);
  return prob;
}

}  // namespace msc
