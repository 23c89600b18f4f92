// msbench: generate Oseen cavity systems, solve single systems, and run
// benchmark sweeps that emit table/plot data.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "msc/aggregates.hpp"
#include "msc/benchmark.hpp"
#include "msc/matrix_market.hpp"
#include "msc/parallel.hpp"
#include "msc/row_scaling.hpp"
#include "msc/schur_approx.hpp"

namespace {

int cmd_gen(int grid, double nu, const std::string& kind, double stretch,
            const std::string& wind, const std::string& out_dir) {
  msc::GridKind gk =
      kind == "stretched" ? msc::GridKind::Stretched : msc::GridKind::Uniform;
  msc::WindKind wk = wind == "lid-picard" ? msc::WindKind::LidPicard
                                          : msc::WindKind::Recirculating;
  msc::OseenProblem prob = msc::generate_oseen(grid, nu, gk, wk, stretch);

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  msc::write_matrix_market(dir / "C.mtx", prob.matrices.C);
  msc::write_matrix_market(dir / "D.mtx", prob.matrices.D);
  msc::write_matrix_market(dir / "E.mtx", prob.matrices.E);
  msc::write_matrix_market(dir / "F.mtx", prob.matrices.F);
  msc::write_matrix_market(dir / "G.mtx", prob.matrices.G);
  msc::write_matrix_market(dir / "Ap.mtx", prob.aux.A_p);
  msc::write_matrix_market(dir / "Dp.mtx", prob.aux.D_p);
  msc::write_matrix_market(dir / "Qp.mtx", prob.aux.Q_p);
  msc::write_vector_market(dir / "rhs.mtx", prob.rhs);
  msc::write_vector_market(dir / "qdiag.mtx", prob.q_diag);

  nlohmann::json meta = {{"grid", grid},
                         {"nu", nu},
                         {"kind", kind},
                         {"stretch", stretch},
                         {"wind", wind},
                         {"n", prob.matrices.n()},
                         {"split", prob.matrices.p},
                         {"pin_index", prob.pin_index}};
  msc::write_file_atomic(dir / "meta.json", meta.dump(2) + "\n");
  std::cout << "wrote " << out_dir << " (n=" << prob.matrices.n()
            << ", split=" << prob.matrices.p << ")\n";
  return 0;
}

int cmd_scaling(int grid, double nu, int sz, int nA,
                const std::vector<int>& workers, const std::string& out) {
  msc::OseenProblem prob = msc::generate_oseen(
      grid, nu, msc::GridKind::Uniform, msc::WindKind::Recirculating);
  msc::RowScaling scaled = msc::scale_rows(prob.matrices.C, prob.rhs);
  msc::SaddleReorder reorder = msc::partition_saddle(
      scaled.matrix, prob.matrices.p, nA, msc::SaddleOrdering::Interleaved);
  const int n_g = reorder.matrix.n_g();
  if (sz <= 0) sz = std::max(1, n_g / 8);
  msc::AggregateSet agg =
      msc::aggregate_by_numbering(n_g, msc::equal_sizes(n_g, std::min(sz, n_g)));

  std::ostringstream csv;
  csv << "workers,seconds,speedup\n";
  double base = 0.0;
  for (int w : workers) {
    using clock = std::chrono::steady_clock;
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = clock::now();
      msc::SchurApproximation shat =
          msc::build_msc(reorder.matrix, agg, msc::MscVariant::Mscn, w);
      best = std::min(best,
                      std::chrono::duration<double>(clock::now() - t0).count());
    }
    if (base == 0.0) base = best;
    csv << w << ',' << best << ',' << base / best << '\n';
    std::cout << "workers=" << w << " seconds=" << best
              << " speedup=" << base / best << '\n';
  }
  if (!out.empty()) msc::write_file_atomic(out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mini-Schur-complement preconditioner benchmark"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an Oseen cavity problem");
  int gen_grid = 32;
  double gen_nu = 0.1, gen_stretch = 1.056;
  std::string gen_kind = "uniform", gen_wind = "recirculating", gen_out = "problem";
  gen->add_option("--grid", gen_grid, "cells per side (>= 8)");
  gen->add_option("--nu", gen_nu, "viscosity");
  gen->add_option("--kind", gen_kind, "uniform|stretched");
  gen->add_option("--stretch", gen_stretch, "stretch factor");
  gen->add_option("--wind", gen_wind, "recirculating|lid-picard");
  gen->add_option("--out", gen_out, "output directory")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "solve one system with one method");
  std::string s_matrix, s_rhs, s_method = "mscn", s_ordering = "interleaved";
  std::string s_side = "right", s_out;
  int s_split = 0, s_sz = 0, s_overlap = -1, s_radius = 1, s_nA = 4, s_sA = 400;
  int s_restart = 300, s_maxit = 3000;
  double s_tolA = 1e-4, s_tol = 1e-9;
  bool s_spectra = false;
  solve->add_option("--matrix", s_matrix, "coefficient matrix (MatrixMarket)")
      ->required();
  solve->add_option("--split", s_split, "dimension of the (1,1) block")
      ->required();
  solve->add_option("--rhs", s_rhs, "right-hand side (n x 1 MatrixMarket)");
  solve->add_option("--method", s_method,
                    "mscn|mscnr|lum|msce|mscer|omscn|omscnr|olum|exact-schur|none");
  solve->add_option("--sz", s_sz, "aggregate size (0 = n_g/8)");
  solve->add_option("--overlap", s_overlap, "overlap width (-1 = sz, clipped)");
  solve->add_option("--radius", s_radius, "path radius for edge variants");
  solve->add_option("--nA", s_nA, "target (1,1) blocks");
  solve->add_option("--tolA", s_tolA, "ILUT drop tolerance");
  solve->add_option("--sA", s_sA, "exact-factor size threshold");
  solve->add_option("--restart", s_restart, "GMRES restart");
  solve->add_option("--maxit", s_maxit, "max iterations");
  solve->add_option("--tol", s_tol, "relative residual tolerance");
  solve->add_option("--side", s_side, "left|right preconditioning");
  solve->add_option("--ordering", s_ordering, "interleaved|split");
  solve->add_option("--out", s_out, "also write the row to this CSV file");
  solve->add_flag("--spectra", s_spectra,
                  "write preconditioned eigenvalues (n <= 600)");

  // run
  auto* run = app.add_subcommand("run", "run a benchmark spec");
  std::string run_spec;
  run->add_option("spec", run_spec, "benchmark spec (JSON)")->required();

  // scaling
  auto* scaling =
      app.add_subcommand("scaling", "construction-time thread scaling");
  int sc_grid = 48, sc_sz = 0, sc_nA = 4;
  double sc_nu = 0.1;
  std::string sc_workers = "1,2,4", sc_out;
  scaling->add_option("--grid", sc_grid, "cells per side");
  scaling->add_option("--nu", sc_nu, "viscosity");
  scaling->add_option("--sz", sc_sz, "aggregate size (0 = n_g/8)");
  scaling->add_option("--nA", sc_nA, "target (1,1) blocks");
  scaling->add_option("--workers", sc_workers, "comma-separated worker counts");
  scaling->add_option("--out", sc_out, "CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_grid, gen_nu, gen_kind, gen_stretch, gen_wind, gen_out);
    }
    if (solve->parsed()) {
      msc::BenchmarkSpec spec;
      msc::ProblemSpec ps;
      ps.matrix_path = s_matrix;
      ps.rhs_path = s_rhs;
      ps.split = s_split;
      spec.problems.push_back(ps);
      msc::MethodSpec ms;
      ms.name = s_method;
      ms.sz = s_sz;
      ms.overlap = s_overlap;
      ms.radius = s_radius;
      ms.nA = s_nA;
      ms.tolA = s_tolA;
      ms.sA = s_sA;
      spec.methods.push_back(ms);
      spec.solver.restart = s_restart;
      spec.solver.max_iters = s_maxit;
      spec.solver.rel_tol = s_tol;
      spec.solver.side =
          s_side == "left" ? msc::PrecondSide::Left : msc::PrecondSide::Right;
      spec.ordering = s_ordering == "split" ? msc::SaddleOrdering::SplitPreserving
                                            : msc::SaddleOrdering::Interleaved;
      spec.spectra = s_spectra;
      spec.output = s_out;  // may be empty: print only
      std::vector<msc::BenchmarkRow> rows = msc::run_benchmark(spec);
      std::cout << msc::rows_to_csv(rows);
      return rows.size() == 1 && rows[0].status == "ok" ? 0 : 1;
    }
    if (run->parsed()) {
      msc::BenchmarkSpec spec = msc::parse_benchmark_spec(run_spec);
      std::vector<msc::BenchmarkRow> rows = msc::run_benchmark(spec);
      std::cout << msc::rows_to_csv(rows);
      std::cout << "wrote " << spec.output << '\n';
      return 0;
    }
    if (scaling->parsed()) {
      std::vector<int> workers;
      std::stringstream ss(sc_workers);
      std::string tok;
      while (std::getline(ss, tok, ',')) workers.push_back(std::stoi(tok));
      return cmd_scaling(sc_grid, sc_nu, sc_sz, sc_nA, workers, sc_out);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
