#include "ncpflow/preconditioner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncpflow {

bool Ilu0Preconditioner::setup(const SparseMatrix& a) {
  ok_ = false;
  if (a.rows() != a.cols()) throw std::invalid_argument("ILU(0): matrix must be square");
  lu_ = a;
  const int n = lu_.rows();
  diag_.assign(n, -1);
  const auto& rp = lu_.row_ptr();
  const auto& ci = lu_.col_idx();
  auto& vals = lu_.values();

  for (int i = 0; i < n; ++i) {
    const int d = lu_.find(i, i);
    if (d < 0) return false;  // structurally missing pivot
    diag_[i] = d;
  }

  for (int i = 0; i < n; ++i) {
    for (int kk = rp[i]; kk < rp[i + 1]; ++kk) {
      const int k = ci[kk];
      if (k >= i) break;
      const double pivot = vals[diag_[k]];
      if (pivot == 0.0 || !std::isfinite(pivot)) return false;
      const double lik = vals[kk] / pivot;
      vals[kk] = lik;
      // Subtract lik * row(k) restricted to this row's pattern, cols > k.
      for (int jj = diag_[k] + 1; jj < rp[k + 1]; ++jj) {
        const int j = ci[jj];
        const int pos = lu_.find(i, j);
        if (pos >= 0) vals[pos] -= lik * vals[jj];
      }
    }
    if (vals[diag_[i]] == 0.0 || !std::isfinite(vals[diag_[i]])) return false;
  }
  ok_ = true;
  return true;
}

void Ilu0Preconditioner::apply(const std::vector<double>& in, std::vector<double>& out) const {
  const int n = lu_.rows();
  out.assign(n, 0.0);
  const auto& rp = lu_.row_ptr();
  const auto& ci = lu_.col_idx();
  const auto& vals = lu_.values();
  // Forward: L y = in (unit diagonal).
  for (int i = 0; i < n; ++i) {
    double s = in[i];
    for (int kk = rp[i]; kk < diag_[i]; ++kk) s -= vals[kk] * out[ci[kk]];
    out[i] = s;
  }
  // Backward: U x = y.
  for (int i = n - 1; i >= 0; --i) {
    double s = out[i];
    for (int kk = diag_[i] + 1; kk < rp[i + 1]; ++kk) s -= vals[kk] * out[ci[kk]];
    out[i] = s / vals[diag_[i]];
  }
}

bool IlutPreconditioner::setup(const SparseMatrix& a, const Options& options) {
  ok_ = false;
  if (a.rows() != a.cols()) throw std::invalid_argument("ILUT: matrix must be square");
  const int n = a.rows();
  const auto& rp = a.row_ptr();
  const auto& ci = a.col_idx();
  const auto& av = a.values();

  l_ptr_.assign(1, 0);
  u_ptr_.assign(1, 0);
  l_idx_.clear();
  l_val_.clear();
  u_idx_.clear();
  u_val_.clear();
  // u_diag_pos[k] indexes row k's diagonal inside u_val_ (stored first).
  std::vector<int> u_diag_pos(n, -1);

  std::vector<double> w(n, 0.0);   // dense accumulator for the current row
  std::vector<int> nz;             // sorted nonzero columns of w
  nz.reserve(256);

  for (int i = 0; i < n; ++i) {
    nz.clear();
    double row_norm = 0.0;
    for (int k = rp[i]; k < rp[i + 1]; ++k) {
      w[ci[k]] = av[k];
      nz.push_back(ci[k]);
      row_norm += av[k] * av[k];
    }
    row_norm = std::sqrt(row_norm);
    const double drop = options.drop_tol * (row_norm > 0.0 ? row_norm : 1.0);
    std::sort(nz.begin(), nz.end());

    // Eliminate below-diagonal entries in increasing column order; fill-in is
    // appended and kept sorted by scanning positions.
    for (std::size_t pos = 0; pos < nz.size() && nz[pos] < i; ++pos) {
      const int k = nz[pos];
      double lik = w[k];
      if (lik == 0.0) continue;
      lik /= u_val_[u_diag_pos[k]];
      if (std::abs(lik) < drop) {
        w[k] = 0.0;
        continue;
      }
      w[k] = lik;
      for (int q = u_ptr_[k] + 1; q < u_ptr_[k + 1]; ++q) {
        const int j = u_idx_[q];
        if (w[j] == 0.0) {
          // New fill: insert in sorted position after the current one.
          const auto it = std::lower_bound(nz.begin() + pos + 1, nz.end(), j);
          if (it == nz.end() || *it != j) nz.insert(it, j);
        }
        w[j] -= lik * u_val_[q];
      }
    }

    // Split into L and U candidates, apply the drop rule, keep the largest.
    std::vector<std::pair<double, int>> lc, uc;
    double diag = 0.0;
    for (int c : nz) {
      const double v = w[c];
      w[c] = 0.0;
      if (c == i) {
        diag = v;
      } else if (v != 0.0 && std::abs(v) >= drop) {
        (c < i ? lc : uc).emplace_back(std::abs(v), c);
        w[c] = v;  // keep until copied out
      }
    }
    auto keep_largest = [&](std::vector<std::pair<double, int>>& cand) {
      if (static_cast<int>(cand.size()) > options.max_fill) {
        std::nth_element(cand.begin(), cand.begin() + options.max_fill, cand.end(),
                         [](const auto& x, const auto& y) { return x.first > y.first; });
        for (std::size_t q = options.max_fill; q < cand.size(); ++q) w[cand[q].second] = 0.0;
        cand.resize(options.max_fill);
      }
      std::sort(cand.begin(), cand.end(),
                [](const auto& x, const auto& y) { return x.second < y.second; });
    };
    keep_largest(lc);
    keep_largest(uc);

    for (const auto& [mag, c] : lc) {
      l_idx_.push_back(c);
      l_val_.push_back(w[c]);
      w[c] = 0.0;
    }
    l_ptr_.push_back(static_cast<int>(l_idx_.size()));

    if (diag == 0.0 || !std::isfinite(diag)) return false;
    u_diag_pos[i] = static_cast<int>(u_idx_.size());
    u_idx_.push_back(i);
    u_val_.push_back(diag);
    for (const auto& [mag, c] : uc) {
      u_idx_.push_back(c);
      u_val_.push_back(w[c]);
      w[c] = 0.0;
    }
    u_ptr_.push_back(static_cast<int>(u_idx_.size()));
  }
  ok_ = true;
  return true;
}

void IlutPreconditioner::apply(const std::vector<double>& in, std::vector<double>& out) const {
  const int n = static_cast<int>(l_ptr_.size()) - 1;
  out = in;
  // Forward: L y = in (unit diagonal).
  for (int i = 0; i < n; ++i) {
    double s = out[i];
    for (int k = l_ptr_[i]; k < l_ptr_[i + 1]; ++k) s -= l_val_[k] * out[l_idx_[k]];
    out[i] = s;
  }
  // Backward: U x = y (diagonal stored first in each row).
  for (int i = n - 1; i >= 0; --i) {
    double s = out[i];
    for (int k = u_ptr_[i] + 1; k < u_ptr_[i + 1]; ++k) s -= u_val_[k] * out[u_idx_[k]];
    out[i] = s / u_val_[u_ptr_[i]];
  }
}

namespace {

// LU with partial pivoting of a 3x3 block; returns false if singular.
bool factor3(std::array<double, 9>& m, std::array<int, 3>& piv) {
  piv = {0, 1, 2};
  for (int c = 0; c < 3; ++c) {
    int p = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(m[3 * piv[r] + c]) > std::abs(m[3 * piv[p] + c])) p = r;
    std::swap(piv[c], piv[p]);
    const double d = m[3 * piv[c] + c];
    if (d == 0.0 || !std::isfinite(d)) return false;
    for (int r = c + 1; r < 3; ++r) {
      const double f = m[3 * piv[r] + c] / d;
      m[3 * piv[r] + c] = f;
      for (int j = c + 1; j < 3; ++j) m[3 * piv[r] + j] -= f * m[3 * piv[c] + j];
    }
  }
  return true;
}

void solve3(const std::array<double, 9>& m, const std::array<int, 3>& piv,
            const double* rhs, double* x) {
  double y[3];
  for (int i = 0; i < 3; ++i) {
    double s = rhs[piv[i]];
    for (int j = 0; j < i; ++j) s -= m[3 * piv[i] + j] * y[j];
    y[i] = s;
  }
  for (int i = 2; i >= 0; --i) {
    double s = y[i];
    for (int j = i + 1; j < 3; ++j) s -= m[3 * piv[i] + j] * x[j];
    x[i] = s / m[3 * piv[i] + i];
  }
}

}  // namespace

bool BlockPreconditioner::setup(const SparseMatrix& a, int n_cells, const Options& options) {
  ok_ = false;
  eliminate_ = false;
  a_ = &a;
  n_ = n_cells;
  opt_ = options;
  const int n3 = 3 * n_cells;
  if (a.rows() != n3 || a.cols() != n3)
    throw std::invalid_argument("BlockPreconditioner: expected a 3N x 3N system");

  elim_col_.assign(n_, -1);
  kept_col_.assign(n_, -1);
  c_pivot_.assign(n_, 0.0);
  c_p_.assign(n_, 0.0);
  c_kept_.assign(n_, 0.0);
  bool elim_possible = true;
  for (int j = 0; j < n_; ++j) {
    const int cr = 2 * n_ + j;
    const double c_s = a.at(cr, n_ + j);
    const double c_r = a.at(cr, 2 * n_ + j);
    c_p_[j] = a.at(cr, j);
    // Pivot on whichever of S_j / rho_j the constraint row weights more; one
    // of the two is always O(1) for the complementarity rows assembled here.
    if (std::abs(c_s) >= std::abs(c_r)) {
      elim_col_[j] = n_ + j;
      kept_col_[j] = 2 * n_ + j;
      c_pivot_[j] = c_s;
      c_kept_[j] = c_r;
    } else {
      elim_col_[j] = 2 * n_ + j;
      kept_col_[j] = n_ + j;
      c_pivot_[j] = c_r;
      c_kept_[j] = c_s;
    }
    if (std::abs(c_pivot_[j]) <= opt_.elimination_pivot_tol) elim_possible = false;
  }

  if (elim_possible) {
    // Reduced system with cell-interleaved unknowns (P_j -> 2j, kept_j ->
    // 2j+1) and rows (water_j -> 2j, hydrogen_j -> 2j+1): substituting
    // elim_j = (r_j - c_p P_j - c_kept kept_j) / c_pivot into the PDE rows
    // folds each eliminated column into the P and kept columns. Interleaving
    // keeps each cell's variables adjacent, which ILU(0) handles far better
    // than a field-split ordering on strongly heterogeneous coefficients.
    const auto& rp = a.row_ptr();
    const auto& ci = a.col_idx();
    const auto& av = a.values();
    const auto red_row = [this](int r) { return r < n_ ? 2 * r : 2 * (r - n_) + 1; };
    std::vector<std::vector<int>> pattern(2 * n_);
    for (int r = 0; r < 2 * n_; ++r) {
      auto& row = pattern[red_row(r)];
      for (int k = rp[r]; k < rp[r + 1]; ++k) {
        const int c = ci[k];
        if (c < n_) {
          row.push_back(2 * c);
        } else {
          const int j = c < 2 * n_ ? c - n_ : c - 2 * n_;
          row.push_back(2 * j + 1);
          if (c == elim_col_[j]) row.push_back(2 * j);
        }
      }
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    reduced_ = SparseMatrix::from_pattern(2 * n_, 2 * n_, pattern);
    for (int r = 0; r < 2 * n_; ++r) {
      const int rr = red_row(r);
      for (int k = rp[r]; k < rp[r + 1]; ++k) {
        const int c = ci[k];
        if (c < n_) {
          reduced_.add(rr, 2 * c, av[k]);
        } else {
          const int j = c < 2 * n_ ? c - n_ : c - 2 * n_;
          if (c == kept_col_[j]) {
            reduced_.add(rr, 2 * j + 1, av[k]);
          } else {
            const double f = av[k] / c_pivot_[j];
            reduced_.add(rr, 2 * j, -f * c_p_[j]);
            reduced_.add(rr, 2 * j + 1, -f * c_kept_[j]);
          }
        }
      }
    }
    if (reduced_ilu_.setup(reduced_, opt_.ilut)) {
      eliminate_ = true;
      ok_ = true;
      return true;
    }
    // Incomplete factorization hit a bad pivot; fall through to Gauss-Seidel.
  }

  block_lu_.assign(n_, {});
  block_piv_.assign(n_, {});
  for (int j = 0; j < n_; ++j) {
    std::array<double, 9> blk{};
    const int rows[3] = {j, n_ + j, 2 * n_ + j};
    const int cols[3] = {j, n_ + j, 2 * n_ + j};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) blk[3 * r + c] = a.at(rows[r], cols[c]);
    if (!factor3(blk, block_piv_[j])) return false;
    block_lu_[j] = blk;
  }
  ok_ = true;
  return true;
}

void BlockPreconditioner::apply(const std::vector<double>& in, std::vector<double>& out) const {
  const int n3 = 3 * n_;
  out.assign(n3, 0.0);
  if (!ok_) {
    out = in;
    return;
  }
  if (eliminate_) {
    // Reduced rhs: fold the eliminated unknowns' constraint-row values into
    // the PDE rows.
    std::vector<double> rr(2 * n_);
    std::vector<double> pinv_rc(n_);
    for (int j = 0; j < n_; ++j) pinv_rc[j] = in[2 * n_ + j] / c_pivot_[j];
    const auto& rp = a_->row_ptr();
    const auto& ci = a_->col_idx();
    const auto& av = a_->values();
    for (int r = 0; r < 2 * n_; ++r) {
      double s = in[r];
      for (int k = rp[r]; k < rp[r + 1]; ++k) {
        const int c = ci[k];
        if (c < n_) continue;
        const int j = c < 2 * n_ ? c - n_ : c - 2 * n_;
        if (c == elim_col_[j]) s -= av[k] * pinv_rc[j];
      }
      rr[r < n_ ? 2 * r : 2 * (r - n_) + 1] = s;
    }
    std::vector<double> x_red;
    reduced_ilu_.apply(rr, x_red);
    // Back substitution keeps the constraint rows exactly satisfied.
    for (int j = 0; j < n_; ++j) {
      out[j] = x_red[2 * j];
      out[kept_col_[j]] = x_red[2 * j + 1];
      out[elim_col_[j]] =
          (in[2 * n_ + j] - c_p_[j] * x_red[2 * j] - c_kept_[j] * x_red[2 * j + 1]) / c_pivot_[j];
    }
    return;
  }

  // Symmetric cell-block Gauss-Seidel sweeps starting from zero.
  const auto& rp = a_->row_ptr();
  const auto& ci = a_->col_idx();
  const auto& av = a_->values();
  auto relax_cell = [&](int j) {
    const int rows[3] = {j, n_ + j, 2 * n_ + j};
    double r[3];
    for (int q = 0; q < 3; ++q) {
      double s = in[rows[q]];
      for (int k = rp[rows[q]]; k < rp[rows[q] + 1]; ++k) s -= av[k] * out[ci[k]];
      r[q] = s;
    }
    double dx[3];
    solve3(block_lu_[j], block_piv_[j], r, dx);
    out[j] += dx[0];
    out[n_ + j] += dx[1];
    out[2 * n_ + j] += dx[2];
  };
  for (int sweep = 0; sweep < opt_.gs_sweeps; ++sweep) {
    for (int j = 0; j < n_; ++j) relax_cell(j);
    for (int j = n_ - 1; j >= 0; --j) relax_cell(j);
  }
}

}  // namespace ncpflow
