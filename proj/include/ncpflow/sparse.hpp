#ifndef NCPFLOW_SPARSE_HPP
#define NCPFLOW_SPARSE_HPP

#include <string>
#include <vector>

namespace ncpflow {

/// Compressed-row sparse matrix. Column indices are sorted and unique within
/// each row.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Builds the matrix from a per-row list of column indices (need not be
  /// sorted; duplicates are rejected). All values start at zero.
  static SparseMatrix from_pattern(int n_rows, int n_cols,
                                   const std::vector<std::vector<int>>& pattern);

  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  void set_zero();

  /// Adds v at (r, c); the slot must exist in the pattern.
  void add(int r, int c, double v);
  void set(int r, int c, double v);

  /// Value at (r, c), zero if outside the pattern.
  double at(int r, int c) const;

  /// Index into values() for (r, c), or -1 if absent.
  int find(int r, int c) const;

  std::vector<double> multiply(const std::vector<double>& x) const;

  /// 1-indexed "row col value" lines, one entry per line.
  void write_coordinate(const std::string& path) const;

 private:
  int n_rows_ = 0, n_cols_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

/// y = A x; dimension mismatch throws.
std::vector<double> spmv(const SparseMatrix& a, const std::vector<double>& x);

double norm2(const std::vector<double>& v);
double dot(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace ncpflow

#endif
