#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace whitney {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Compressed sparse row matrix. Column indices ascend within each row;
/// duplicate entries are summed and exact zeros dropped at assembly.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  void multiply(std::span<const double> x, std::span<double> y) const;  // y = A x
  void multiply_transpose(std::span<const double> x, std::span<double> y) const;

  std::vector<double> multiply(const std::vector<double>& x) const;
  std::vector<double> multiply_transpose(const std::vector<double>& x) const;

  SparseMatrix transpose() const;
  std::vector<double> diagonal() const;

  bool structurally_symmetric() const;

  const std::vector<int>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> col_indices_;
  std::vector<double> values_;
};

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

struct CgOptions {
  double rel_tol = 1e-10;
  int max_iter = 0;  // 0 means 10 * n
};

/// Jacobi-preconditioned conjugate gradients for SPD systems. Deterministic:
/// fixed summation order, no data races. The optional observer sees every
/// iterate (including the initial guess).
std::pair<std::vector<double>, SolveReport> cg_solve(
    const SparseMatrix& a, const std::vector<double>& b, const CgOptions& options = {},
    const std::function<void(int, const std::vector<double>&)>& observer = nullptr);

}  // namespace whitney
