#include "ncpflow/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ncpflow {

SparseMatrix SparseMatrix::from_pattern(int n_rows, int n_cols,
                                        const std::vector<std::vector<int>>& pattern) {
  if (static_cast<int>(pattern.size()) != n_rows)
    throw std::invalid_argument("SparseMatrix: pattern size != n_rows");
  SparseMatrix m;
  m.n_rows_ = n_rows;
  m.n_cols_ = n_cols;
  m.row_ptr_.resize(n_rows + 1, 0);
  for (int r = 0; r < n_rows; ++r)
    m.row_ptr_[r + 1] = m.row_ptr_[r] + static_cast<int>(pattern[r].size());
  m.col_idx_.reserve(m.row_ptr_.back());
  for (int r = 0; r < n_rows; ++r) {
    std::vector<int> cols = pattern[r];
    std::sort(cols.begin(), cols.end());
    if (std::adjacent_find(cols.begin(), cols.end()) != cols.end())
      throw std::invalid_argument("SparseMatrix: duplicate column in pattern");
    for (int c : cols) {
      if (c < 0 || c >= n_cols) throw std::invalid_argument("SparseMatrix: column out of range");
      m.col_idx_.push_back(c);
    }
  }
  m.values_.assign(m.col_idx_.size(), 0.0);
  return m;
}

void SparseMatrix::set_zero() { std::fill(values_.begin(), values_.end(), 0.0); }

int SparseMatrix::find(int r, int c) const {
  const auto begin = col_idx_.begin() + row_ptr_[r];
  const auto end = col_idx_.begin() + row_ptr_[r + 1];
  const auto it = std::lower_bound(begin, end, c);
  if (it == end || *it != c) return -1;
  return static_cast<int>(it - col_idx_.begin());
}

void SparseMatrix::add(int r, int c, double v) {
  const int k = find(r, c);
  if (k < 0) throw std::out_of_range("SparseMatrix::add: entry not in pattern");
  values_[k] += v;
}

void SparseMatrix::set(int r, int c, double v) {
  const int k = find(r, c);
  if (k < 0) throw std::out_of_range("SparseMatrix::set: entry not in pattern");
  values_[k] = v;
}

double SparseMatrix::at(int r, int c) const {
  const int k = find(r, c);
  return k < 0 ? 0.0 : values_[k];
}

std::vector<double> SparseMatrix::multiply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_cols_)
    throw std::invalid_argument("spmv: dimension mismatch");
  std::vector<double> y(n_rows_, 0.0);
  for (int r = 0; r < n_rows_; ++r) {
    double s = 0.0;
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += values_[k] * x[col_idx_[k]];
    y[r] = s;
  }
  return y;
}

void SparseMatrix::write_coordinate(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (int r = 0; r < n_rows_; ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      out << (r + 1) << ' ' << (col_idx_[k] + 1) << ' ' << values_[k] << '\n';
}

std::vector<double> spmv(const SparseMatrix& a, const std::vector<double>& x) {
  return a.multiply(x);
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace ncpflow
