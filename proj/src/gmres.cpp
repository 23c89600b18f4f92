#include "msc/gmres.hpp"

#include <chrono>
#include <cmath>

namespace msc {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

constexpr double kBreakdown = 1e-14;

}  // namespace

double true_residual(const SparseMatrix& a, std::span<const double> x,
                     std::span<const double> b) {
  std::vector<double> r = matvec(a, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  const double bn = norm2(b);
  const double rn = norm2(r);
  return bn == 0.0 ? rn : rn / bn;
}

std::pair<std::vector<double>, SolveReport> gmres(const SparseMatrix& a,
                                                  const Preconditioner* prec,
                                                  const std::vector<double>& rhs,
                                                  const SolverConfig& cfg) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(rhs.size()) != n) {
    throw std::invalid_argument("gmres: dimension mismatch");
  }
  if (prec && prec->dim() != n) {
    throw std::invalid_argument("gmres: preconditioner dimension mismatch");
  }
  if (cfg.restart < 1 || !(cfg.rel_tol > 0.0) || cfg.max_iters < 1) {
    throw std::invalid_argument("gmres: bad solver configuration");
  }

  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  std::vector<double> x(n, 0.0);

  const double norm_b = norm2(rhs);
  if (norm_b == 0.0) {
    rep.converged = true;
    rep.residual_history.push_back(0.0);
    return {std::move(x), std::move(rep)};
  }

  const bool left = prec && cfg.side == PrecondSide::Left;
  const bool right = prec && cfg.side == PrecondSide::Right;

  // Residual norms within cycles are relative to the working rhs: b itself,
  // or B^-1 b under left preconditioning.
  double denom = norm_b;
  if (left) denom = norm2(prec->apply(rhs));
  if (denom == 0.0) denom = norm_b;

  const int m_max = cfg.restart;
  std::vector<std::vector<double>> v;  // Arnoldi basis
  std::vector<double> h(static_cast<std::size_t>(m_max + 1) * m_max, 0.0);
  auto H = [&](int i, int j) -> double& {
    return h[static_cast<std::size_t>(j) * (m_max + 1) + i];
  };
  std::vector<double> cs(m_max), sn(m_max), g(m_max + 1);

  double last_true = 1.0;
  double prev_cycle_true = -1.0;
  bool done = false;

  while (!done) {
    std::vector<double> r = matvec(a, x);
    for (int i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
    if (left) r = prec->apply(r);
    const double beta = norm2(r);
    const double rel0 = beta / denom;
    if (rep.residual_history.empty()) rep.residual_history.push_back(rel0);
    if (rel0 <= cfg.rel_tol) {
      last_true = true_residual(a, x, rhs);
      rep.converged = last_true <= cfg.rel_tol;
      break;
    }

    v.assign(1, r);
    for (double& vi : v[0]) vi /= beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    int m = 0;
    bool breakdown = false;
    bool inner_converged = false;
    for (int j = 0; j < m_max && rep.iterations < cfg.max_iters; ++j) {
      std::vector<double> w;
      if (right) {
        w = matvec(a, prec->apply(v[j]));
      } else if (left) {
        w = prec->apply(matvec(a, v[j]));
      } else {
        w = matvec(a, v[j]);
      }
      for (int i = 0; i <= j; ++i) {
        const double hij = dot(v[i], w);
        H(i, j) = hij;
        for (int t = 0; t < n; ++t) w[t] -= hij * v[i][t];
      }
      const double hnext = norm2(w);
      H(j + 1, j) = hnext;
      if (hnext >= kBreakdown) {
        for (double& wt : w) wt /= hnext;
        v.push_back(std::move(w));
      } else {
        breakdown = true;
      }

      // Givens update of column j and the residual estimate.
      for (int i = 0; i < j; ++i) {
        const double t1 = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        const double t2 = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t1;
        H(i + 1, j) = t2;
      }
      const double denom_rot = std::hypot(H(j, j), H(j + 1, j));
      cs[j] = denom_rot == 0.0 ? 1.0 : H(j, j) / denom_rot;
      sn[j] = denom_rot == 0.0 ? 0.0 : H(j + 1, j) / denom_rot;
      H(j, j) = denom_rot;
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      ++rep.iterations;
      m = j + 1;
      const double rel = std::abs(g[j + 1]) / denom;
      rep.residual_history.push_back(rel);
      if (breakdown || rel <= cfg.rel_tol) {
        inner_converged = rel <= cfg.rel_tol;
        break;
      }
    }

    // Least-squares solve and update in the Krylov (or preconditioned) space.
    std::vector<double> y(m);
    for (int i = m - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < m; ++j) s -= H(i, j) * y[j];
      y[i] = s / H(i, i);
    }
    std::vector<double> z(n, 0.0);
    for (int j = 0; j < m; ++j) {
      for (int t = 0; t < n; ++t) z[t] += y[j] * v[j][t];
    }
    if (right) z = prec->apply(z);
    for (int t = 0; t < n; ++t) x[t] += z[t];

    last_true = true_residual(a, x, rhs);
    if (last_true <= cfg.rel_tol) {
      rep.converged = true;
      done = true;
    } else if (breakdown) {
      rep.converged = false;
      done = true;
    } else if (rep.iterations >= cfg.max_iters) {
      rep.converged = false;  // NC
      done = true;
    } else if (inner_converged) {
      // Recurrence met the tolerance but the true residual did not; retry
      // unless the cycle brought no progress.
      if (prev_cycle_true >= 0.0 && last_true >= 0.999 * prev_cycle_true) {
        rep.converged = false;
        done = true;
      }
    }
    prev_cycle_true = last_true;
  }

  rep.residual_history.push_back(last_true);
  rep.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return {std::move(x), std::move(rep)};
}

}  // namespace msc
