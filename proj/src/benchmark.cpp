#include "msc/benchmark.hpp"

#include <chrono>
#include <complex>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "msc/aggregates.hpp"
#include "msc/matrix_market.hpp"
#include "msc/parallel.hpp"
#include "msc/row_scaling.hpp"
#include "msc/schur_approx.hpp"
#include "msc/spectrum.hpp"

namespace msc {

namespace {

using nlohmann::json;

constexpr int kSpectraLimit = 600;

bool is_msc_method(const std::string& name) {
  try {
    variant_from_name(name);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

struct PreparedProblem {
  std::string label;
  double nu = 0.0;
  int p = 0;
  SparseMatrix scaled_c;
  std::vector<double> scaled_rhs;
  std::optional<OseenProblem> generated;
};

PreparedProblem prepare(const ProblemSpec& ps) {
  PreparedProblem out;
  out.label = ps.label();
  out.nu = ps.nu;
  if (ps.matrix_path.empty()) {
    OseenProblem prob =
        generate_oseen(ps.grid_n, ps.nu, ps.grid, ps.wind, ps.stretch);
    out.p = prob.matrices.p;
    RowScaling scaled = scale_rows(prob.matrices.C, prob.rhs);
    out.scaled_c = std::move(scaled.matrix);
    out.scaled_rhs = std::move(scaled.rhs);
    out.generated = std::move(prob);
  } else {
    SparseMatrix c = load_matrix_market(ps.matrix_path);
    std::vector<double> rhs(c.rows(), 1.0);
    if (!ps.rhs_path.empty()) rhs = load_vector_market(ps.rhs_path);
    out.p = ps.split;
    RowScaling scaled = scale_rows(c, rhs);
    out.scaled_c = std::move(scaled.matrix);
    out.scaled_rhs = std::move(scaled.rhs);
  }
  return out;
}

struct CellResult {
  BenchmarkRow row;
  std::vector<std::complex<double>> eigenvalues;  // when spectra requested
};

AggregateSet make_aggregates(const PartitionedMatrix& pm, MscVariant variant,
                             int sz, int overlap, int radius) {
  const int n_g = pm.n_g();
  if (sz <= 0) sz = std::max(1, n_g / 8);
  sz = std::min(sz, n_g);
  std::vector<int> sizes = equal_sizes(n_g, sz);
  if (variant_overlapped(variant)) {
    std::vector<int> widths(sizes.size(), overlap < 0 ? sz : overlap);
    widths.back() = 0;
    if (clip_overlap_widths(n_g, sizes, widths)) {
      std::cerr << "note: overlap clipped to the admissible bound for "
                << variant_name(variant) << "\n";
    }
    return aggregate_overlapped(n_g, sizes, widths);
  }
  if (variant_edge_based(variant)) {
    std::vector<std::pair<int, int>> ranges;
    int begin = 0;
    for (int s : sizes) {
      ranges.push_back({begin, begin + s});
      begin += s;
    }
    return aggregate_by_edges(build_graph(pm.C), pm.p, ranges, radius);
  }
  return aggregate_by_numbering(n_g, sizes);
}

CellResult run_cell(const PreparedProblem& prob, const MethodSpec& method,
                    const BenchmarkSpec& spec) {
  CellResult cell;
  BenchmarkRow& row = cell.row;
  row.problem = prob.label;
  row.method = method.name;
  row.nu = prob.nu;
  row.status = "ok";

  using clock = std::chrono::steady_clock;
  try {
    std::unique_ptr<Preconditioner> b;
    SparseMatrix a = prob.scaled_c;
    std::vector<double> rhs = prob.scaled_rhs;

    if (is_msc_method(method.name)) {
      const MscVariant variant = variant_from_name(method.name);
      SaddleReorder reorder =
          partition_saddle(prob.scaled_c, prob.p, method.nA, spec.ordering);
      a = reorder.matrix.C;
      rhs = permute_vector(prob.scaled_rhs, reorder.perm);
      row.nA = reorder.blocks;

      const auto t0 = clock::now();
      AggregateSet agg = make_aggregates(reorder.matrix, variant, method.sz,
                                         method.overlap, method.radius);
      row.sz = agg.g_ranges.empty()
                   ? 0
                   : agg.g_ranges[0].second - agg.g_ranges[0].first;
      row.nS = agg.count();
      SchurApproximation shat = build_msc(reorder.matrix, agg, variant,
                                          spec.construction_workers);
      b = std::make_unique<MscPreconditioner>(build_preconditioner(
          reorder.matrix, shat, method.tolA, method.sA));
      row.setup_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    } else if (method.name == "exact-schur") {
      PartitionedMatrix pm = PartitionedMatrix::from_split(a, prob.p);
      const auto t0 = clock::now();
      SchurApproximation shat = build_exact_schur(pm);
      b = std::make_unique<MscPreconditioner>(
          build_preconditioner(pm, shat, 0.0, pm.p + 1));
      row.setup_seconds = std::chrono::duration<double>(clock::now() - t0).count();
      row.nA = 1;
      row.nS = 1;
      row.sz = pm.n_g();
    } else if (method.name == "pcd") {
      if (!prob.generated) {
        throw std::invalid_argument("pcd needs generator-supplied operators");
      }
      PartitionedMatrix pm = PartitionedMatrix::from_split(a, prob.p);
      const auto t0 = clock::now();
      b = std::make_unique<PcdPreconditioner>(
          build_pcd(pm, prob.generated->aux));
      row.setup_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    } else if (method.name == "lsc") {
      if (!prob.generated) {
        throw std::invalid_argument("lsc needs generator-supplied velocity mass");
      }
      PartitionedMatrix pm = PartitionedMatrix::from_split(a, prob.p);
      const auto t0 = clock::now();
      b = std::make_unique<LscPreconditioner>(
          build_lsc(pm, prob.generated->q_diag));
      row.setup_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    } else if (method.name != "none") {
      throw std::invalid_argument("unknown method '" + method.name + "'");
    }

    auto [x, report] = gmres(a, b.get(), rhs, spec.solver);
    row.iterations = report.iterations;
    row.solve_seconds = report.solve_seconds;
    row.fill = b ? fill_factor(*b, a) : 0.0;
    if (!report.converged) row.status = "NC";

    if (spec.spectra && a.rows() <= kSpectraLimit) {
      DenseMatrix op;
      if (!b) {
        op = to_dense(a);
      } else if (spec.solver.side == PrecondSide::Left) {
        op = dense_left_preconditioned(a, *b);
      } else {
        op = dense_right_preconditioned(a, *b);
      }
      cell.eigenvalues = spectrum(op);
    }
  } catch (const std::exception& err) {
    row.status = std::string("error: ") + err.what();
    row.iterations = -1;
  }
  return cell;
}

}  // namespace

std::string ProblemSpec::label() const {
  if (!matrix_path.empty()) {
    return std::filesystem::path(matrix_path).stem().string();
  }
  std::ostringstream s;
  s << (grid == GridKind::Uniform ? "uniform" : "stretched") << grid_n;
  return s.str();
}

void BenchmarkSpec::validate() const {
  if (problems.empty()) {
    throw std::invalid_argument("benchmark spec: no problems");
  }
  if (methods.empty()) {
    throw std::invalid_argument("benchmark spec: no methods");
  }
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("benchmark spec: format must be csv or json");
  }
  if (workers < 1) {
    throw std::invalid_argument("benchmark spec: workers must be >= 1");
  }
  if (solver.restart < 1 || solver.max_iters < 1 || !(solver.rel_tol > 0.0)) {
    throw std::invalid_argument("benchmark spec: bad solver settings");
  }
  for (const ProblemSpec& p : problems) {
    if (p.matrix_path.empty()) {
      if (p.grid_n < 8 || !(p.nu > 0.0)) {
        throw std::invalid_argument(
            "benchmark spec: generated problems need grid >= 8 and nu > 0");
      }
    } else if (p.split < 1) {
      throw std::invalid_argument(
          "benchmark spec: loaded problems need a positive split");
    }
  }
  for (const MethodSpec& m : methods) {
    if (!is_msc_method(m.name) && m.name != "exact-schur" && m.name != "pcd" &&
        m.name != "lsc" && m.name != "none") {
      throw std::invalid_argument("benchmark spec: unknown method " + m.name);
    }
    if (m.nA < 1 || m.tolA < 0.0 || m.sA < 0 || m.radius < 1) {
      throw std::invalid_argument("benchmark spec: bad parameters for " + m.name);
    }
  }
}

BenchmarkSpec parse_benchmark_spec(const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) {
    throw IoError("cannot open " + json_path.string());
  }
  json j = json::parse(in);
  BenchmarkSpec spec;
  for (const json& p : j.at("problems")) {
    ProblemSpec ps;
    if (p.contains("matrix")) {
      ps.matrix_path = p.at("matrix").get<std::string>();
      ps.rhs_path = p.value("rhs", std::string());
      ps.split = p.at("split").get<int>();
      ps.nu = p.value("nu", 0.0);
    } else {
      ps.grid_n = p.at("grid").get<int>();
      ps.nu = p.at("nu").get<double>();
      const std::string kind = p.value("kind", std::string("uniform"));
      if (kind == "stretched") {
        ps.grid = GridKind::Stretched;
      } else if (kind != "uniform") {
        throw std::invalid_argument("problem kind must be uniform|stretched");
      }
      ps.stretch = p.value("stretch", 1.056);
      const std::string wind = p.value("wind", std::string("recirculating"));
      if (wind == "lid-picard") {
        ps.wind = WindKind::LidPicard;
      } else if (wind != "recirculating") {
        throw std::invalid_argument("wind must be recirculating|lid-picard");
      }
    }
    spec.problems.push_back(std::move(ps));
  }
  for (const json& m : j.at("methods")) {
    MethodSpec ms;
    ms.name = m.at("name").get<std::string>();
    ms.sz = m.value("sz", 0);
    ms.overlap = m.value("overlap", -1);
    ms.radius = m.value("radius", 1);
    ms.nA = m.value("nA", 4);
    ms.tolA = m.value("tolA", 1e-4);
    ms.sA = m.value("sA", 400);
    spec.methods.push_back(std::move(ms));
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    spec.solver.restart = s.value("restart", 300);
    spec.solver.max_iters = s.value("max_iters", 3000);
    spec.solver.rel_tol = s.value("rel_tol", 1e-9);
    const std::string side = s.value("side", std::string("right"));
    if (side == "left") {
      spec.solver.side = PrecondSide::Left;
    } else if (side != "right") {
      throw std::invalid_argument("solver side must be left|right");
    }
  }
  spec.ordering = SaddleOrdering::Interleaved;
  const std::string ordering = j.value("ordering", std::string("interleaved"));
  if (ordering == "split") {
    spec.ordering = SaddleOrdering::SplitPreserving;
  } else if (ordering != "interleaved") {
    throw std::invalid_argument("ordering must be interleaved|split");
  }
  spec.output = j.value("output", std::string("results.csv"));
  spec.format = j.value("format", std::string("csv"));
  spec.spectra = j.value("spectra", false);
  spec.workers = j.value("workers", 1);
  spec.construction_workers = j.value("construction_workers", 0);
  spec.validate();
  return spec;
}

std::vector<BenchmarkRow> run_benchmark(const BenchmarkSpec& spec) {
  spec.validate();
  std::vector<PreparedProblem> prepared;
  prepared.reserve(spec.problems.size());
  for (const ProblemSpec& ps : spec.problems) prepared.push_back(prepare(ps));

  const int cells =
      static_cast<int>(spec.problems.size() * spec.methods.size());
  std::vector<CellResult> results(cells);
  parallel_for(cells, spec.workers, [&](int idx) {
    const std::size_t pi = idx / spec.methods.size();
    const std::size_t mi = idx % spec.methods.size();
    results[idx] = run_cell(prepared[pi], spec.methods[mi], spec);
  });

  std::vector<BenchmarkRow> rows;
  rows.reserve(cells);
  for (const CellResult& c : results) rows.push_back(c.row);

  if (!spec.output.empty()) {
    write_file_atomic(spec.output, spec.format == "csv" ? rows_to_csv(rows)
                                                        : rows_to_json(rows));
    if (spec.spectra) {
      std::ostringstream s;
      s << "problem,method,re,im\n";
      for (const CellResult& c : results) {
        for (const auto& ev : c.eigenvalues) {
          s << c.row.problem << ',' << c.row.method << ',' << ev.real() << ','
            << ev.imag() << '\n';
        }
      }
      write_file_atomic(spec.output + ".spectra.csv", s.str());
    }
  }
  return rows;
}

std::string rows_to_csv(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream s;
  s.precision(6);
  s << "problem,method,nu,sz,nA,nS,its,setup_seconds,solve_seconds,"
       "fill_factor,status\n";
  for (const BenchmarkRow& r : rows) {
    s << r.problem << ',' << r.method << ',' << r.nu << ',' << r.sz << ','
      << r.nA << ',' << r.nS << ',' << r.iterations << ',' << r.setup_seconds
      << ',' << r.solve_seconds << ',' << r.fill << ',';
    // Commas inside error messages would break the table.
    std::string status = r.status;
    for (char& c : status) {
      if (c == ',' || c == '\n') c = ';';
    }
    s << status << '\n';
  }
  return s.str();
}

std::string rows_to_json(const std::vector<BenchmarkRow>& rows) {
  json out = json::array();
  for (const BenchmarkRow& r : rows) {
    out.push_back({{"problem", r.problem},
                   {"method", r.method},
                   {"nu", r.nu},
                   {"sz", r.sz},
                   {"nA", r.nA},
                   {"nS", r.nS},
                   {"its", r.iterations},
                   {"setup_seconds", r.setup_seconds},
                   {"solve_seconds", r.solve_seconds},
                   {"fill_factor", r.fill},
                   {"status", r.status}});
  }
  return out.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) {
      throw IoError("cannot write " + tmp.string());
    }
    out << contents;
    if (!out) {
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace msc
