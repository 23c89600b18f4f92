#include "msc/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace msc {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

SparseMatrix load_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  int lineno = 0;
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("empty file " + path.string(), 1);
  }
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
    throw IoError("not a MatrixMarket matrix file: " + path.string(), lineno);
  }
  if (lower(format) != "coordinate") {
    throw IoError("unsupported format '" + format + "' (coordinate only)",
                  lineno);
  }
  const std::string f = lower(field);
  if (f != "real" && f != "integer") {
    throw IoError("unsupported field '" + field + "' (real only)", lineno);
  }
  const std::string sym = lower(symmetry);
  const bool symmetric = sym == "symmetric";
  const bool skew = sym == "skew-symmetric";
  if (!symmetric && !skew && sym != "general") {
    throw IoError("unsupported symmetry '" + symmetry + "'", lineno);
  }

  int nrows = -1, ncols = -1;
  long long nentries = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream dims(line);
    if (!(dims >> nrows >> ncols >> nentries) || nrows < 0 || ncols < 0 ||
        nentries < 0) {
      throw IoError("malformed dimension line", lineno);
    }
    break;
  }
  if (nrows < 0) {
    throw IoError("missing dimension line", lineno);
  }

  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(nentries) * (symmetric ? 2 : 1));
  long long seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream row(line);
    int i, j;
    double v;
    if (!(row >> i >> j >> v)) {
      throw IoError("malformed entry", lineno);
    }
    if (i < 1 || i > nrows || j < 1 || j > ncols) {
      throw IoError("entry indices out of range", lineno);
    }
    t.push_back({i - 1, j - 1, v});
    if ((symmetric || skew) && i != j) {
      t.push_back({j - 1, i - 1, skew ? -v : v});
    }
    ++seen;
  }
  if (seen != nentries) {
    throw IoError("expected " + std::to_string(nentries) + " entries, found " +
                      std::to_string(seen),
                  lineno);
  }
  return SparseMatrix::from_triplets(nrows, ncols, std::move(t));
}

void write_matrix_market(const std::filesystem::path& path,
                         const SparseMatrix& a) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  out.precision(17);
  for (int i = 0; i < a.rows(); ++i) {
    auto c = a.row_cols(i);
    auto v = a.row_values(i);
    for (std::size_t k = 0; k < c.size(); ++k) {
      out << i + 1 << ' ' << c[k] + 1 << ' ' << v[k] << '\n';
    }
  }
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

std::vector<double> load_vector_market(const std::filesystem::path& path) {
  SparseMatrix m = load_matrix_market(path);
  if (m.cols() != 1) {
    throw IoError("expected an n x 1 vector in " + path.string());
  }
  std::vector<double> v(m.rows(), 0.0);
  for (int i = 0; i < m.rows(); ++i) {
    auto vals = m.row_values(i);
    if (!vals.empty()) v[i] = vals[0];
  }
  return v;
}

void write_vector_market(const std::filesystem::path& path,
                         std::span<const double> v) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) t.push_back({static_cast<int>(i), 0, v[i]});
  }
  write_matrix_market(
      path, SparseMatrix::from_triplets(static_cast<int>(v.size()), 1,
                                        std::move(t)));
}

PartitionedMatrix load_partitioned(const std::filesystem::path& c_path, int p) {
  return PartitionedMatrix::from_split(load_matrix_market(c_path), p);
}

PartitionedMatrix load_partitioned(const std::filesystem::path& d_path,
                                   const std::filesystem::path& e_path,
                                   const std::filesystem::path& f_path,
                                   const std::filesystem::path& g_path) {
  return PartitionedMatrix::from_blocks(
      load_matrix_market(d_path), load_matrix_market(e_path),
      load_matrix_market(f_path), load_matrix_market(g_path));
}

}  // namespace msc
