#include "whitney/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace whitney {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::invalid_argument("SparseMatrix::from_triplets: index out of range");
  }
  // Stable sort keeps insertion order within a (row,col) group, so duplicate
  // accumulation is deterministic.
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_offsets_.assign(rows + 1, 0);
  m.col_indices_.reserve(triplets.size());
  m.values_.reserve(triplets.size());

  std::size_t i = 0;
  for (int r = 0; r < rows; ++r) {
    while (i < triplets.size() && triplets[i].row == r) {
      int c = triplets[i].col;
      double v = 0.0;
      while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) {
        v += triplets[i].value;
        ++i;
      }
      if (v != 0.0) {
        m.col_indices_.push_back(c);
        m.values_.push_back(v);
      }
    }
    m.row_offsets_[r + 1] = static_cast<int>(m.col_indices_.size());
  }
  return m;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != cols_ || static_cast<int>(y.size()) != rows_)
    throw std::invalid_argument("SparseMatrix::multiply: shape mismatch");
  for (int r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (int i = row_offsets_[r]; i < row_offsets_[r + 1]; ++i)
      s += values_[i] * x[col_indices_[i]];
    y[r] = s;
  }
}

void SparseMatrix::multiply_transpose(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != rows_ || static_cast<int>(y.size()) != cols_)
    throw std::invalid_argument("SparseMatrix::multiply_transpose: shape mismatch");
  std::fill(y.begin(), y.end(), 0.0);
  for (int r = 0; r < rows_; ++r)
    for (int i = row_offsets_[r]; i < row_offsets_[r + 1]; ++i)
      y[col_indices_[i]] += values_[i] * x[r];
}

std::vector<double> SparseMatrix::multiply(const std::vector<double>& x) const {
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

std::vector<double> SparseMatrix::multiply_transpose(const std::vector<double>& x) const {
  std::vector<double> y(cols_);
  multiply_transpose(x, y);
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (int r = 0; r < rows_; ++r)
    for (int i = row_offsets_[r]; i < row_offsets_[r + 1]; ++i)
      t.push_back({col_indices_[i], r, values_[i]});
  return from_triplets(cols_, rows_, std::move(t));
}

std::vector<double> SparseMatrix::diagonal() const {
  int n = std::min(rows_, cols_);
  std::vector<double> d(n, 0.0);
  for (int r = 0; r < n; ++r)
    for (int i = row_offsets_[r]; i < row_offsets_[r + 1]; ++i)
      if (col_indices_[i] == r) d[r] = values_[i];
  return d;
}

bool SparseMatrix::structurally_symmetric() const {
  if (rows_ != cols_) return false;
  SparseMatrix t = transpose();
  return t.row_offsets_ == row_offsets_ && t.col_indices_ == col_indices_;
}

std::pair<std::vector<double>, SolveReport> cg_solve(
    const SparseMatrix& a, const std::vector<double>& b, const CgOptions& options,
    const std::function<void(int, const std::vector<double>&)>& observer) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("cg_solve: matrix not square");
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("cg_solve: rhs size mismatch");
  if (!a.structurally_symmetric()) throw std::invalid_argument("cg_solve: matrix not symmetric");
  for (double v : b)
    if (!std::isfinite(v)) throw std::invalid_argument("cg_solve: rhs not finite");

  std::vector<double> inv_diag = a.diagonal();
  for (double& d : inv_diag) {
    if (d == 0.0) throw std::invalid_argument("cg_solve: zero diagonal entry");
    d = 1.0 / d;
  }

  const int max_iter = options.max_iter > 0 ? options.max_iter : 10 * n;
  std::vector<double> x(n, 0.0);
  std::vector<double> r = b;
  std::vector<double> z(n), p(n), ap(n);

  double bnorm = 0.0;
  for (double v : b) bnorm += v * v;
  bnorm = std::sqrt(bnorm);

  SolveReport report;
  if (observer) observer(0, x);
  if (bnorm == 0.0) {
    report.converged = true;
    return {std::move(x), report};
  }

  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = 0.0;
  for (int i = 0; i < n; ++i) rz += r[i] * z[i];

  double rnorm = bnorm;
  int it = 0;
  while (rnorm / bnorm > options.rel_tol && it < max_iter) {
    ++it;
    a.multiply(p, ap);
    double pap = 0.0;
    for (int i = 0; i < n; ++i) pap += p[i] * ap[i];
    if (pap <= 0.0) throw std::runtime_error("cg_solve: matrix not positive definite");
    double alpha = rz / pap;
    for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (int i = 0; i < n; ++i) r[i] -= alpha * ap[i];
    if (observer) observer(it, x);
    rnorm = 0.0;
    for (double v : r) rnorm += v * v;
    rnorm = std::sqrt(rnorm);
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    double rz_next = 0.0;
    for (int i = 0; i < n; ++i) rz_next += r[i] * z[i];
    double beta = rz_next / rz;
    rz = rz_next;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  report.iterations = it;
  report.relative_residual = rnorm / bnorm;
  report.converged = report.relative_residual <= options.rel_tol;
  return {std::move(x), report};
}

}  // namespace whitney
