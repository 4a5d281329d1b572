#ifndef NCPFLOW_PRECONDITIONER_HPP
#define NCPFLOW_PRECONDITIONER_HPP

#include <array>
#include <vector>

#include "ncpflow/gmres.hpp"
#include "ncpflow/sparse.hpp"

namespace ncpflow {

/// ILU(0) on the matrix's own sparsity pattern. setup() reports failure on a
/// zero (or denormal) pivot instead of throwing.
class Ilu0Preconditioner final : public Preconditioner {
 public:
  bool setup(const SparseMatrix& a);
  bool ok() const { return ok_; }
  void apply(const std::vector<double>& in, std::vector<double>& out) const override;

 private:
  SparseMatrix lu_;
  std::vector<int> diag_;
  bool ok_ = false;
};

/// ILUT: incomplete LU with threshold dropping and a per-row fill cap
/// (Saad-style). Entries below drop_tol times the row's 2-norm are discarded;
/// at most max_fill entries are kept on each side of the diagonal beyond the
/// original pattern budget. setup() reports failure on a zero pivot.
class IlutPreconditioner final : public Preconditioner {
 public:
  struct Options {
    double drop_tol = 1.0e-4;  ///< relative drop threshold per row
    int max_fill = 20;         ///< kept entries per row, each of L and U
  };

  bool setup(const SparseMatrix& a, const Options& options);
  bool setup(const SparseMatrix& a) { return setup(a, Options{}); }
  bool ok() const { return ok_; }
  void apply(const std::vector<double>& in, std::vector<double>& out) const override;

 private:
  // Row-compressed L (unit diagonal implicit) and U (diagonal first).
  std::vector<int> l_ptr_, l_idx_, u_ptr_, u_idx_;
  std::vector<double> l_val_, u_val_;
  bool ok_ = false;
};

/// Preconditioner for the assembled 3N x 3N system (unknowns ordered P | S |
/// rho, rows water | hydrogen | constraint). Each constraint row couples only
/// its own cell, so one unknown per cell (S or rho, whichever carries the
/// larger constraint-row coefficient) is eliminated exactly and a threshold
/// ILU is applied to the reduced 2N block. Cells where both coefficients
/// vanish force the fallback: symmetric cell-block Gauss-Seidel sweeps (3x3
/// dense cell blocks, no Schur complement).
class BlockPreconditioner final : public Preconditioner {
 public:
  struct Options {
    double elimination_pivot_tol = 1.0e-10;  ///< min constraint pivot magnitude
    int gs_sweeps = 2;                       ///< forward+backward sweep pairs
    IlutPreconditioner::Options ilut;        ///< factorization of the reduced block
  };

  bool setup(const SparseMatrix& a, int n_cells, const Options& options);
  bool setup(const SparseMatrix& a, int n_cells) { return setup(a, n_cells, Options{}); }
  bool ok() const { return ok_; }
  bool used_elimination() const { return eliminate_; }
  void apply(const std::vector<double>& in, std::vector<double>& out) const override;

 private:
  const SparseMatrix* a_ = nullptr;
  int n_ = 0;
  bool ok_ = false;
  bool eliminate_ = false;
  Options opt_;

  // Elimination path: per cell, the constraint row's pivot column (S_j or
  // rho_j), the pivot value, and the coefficients on P_j and the kept unknown.
  std::vector<int> elim_col_;
  std::vector<int> kept_col_;
  std::vector<double> c_pivot_, c_p_, c_kept_;
  SparseMatrix reduced_;  // 2N x 2N system in the (P, kept) unknowns
  IlutPreconditioner reduced_ilu_;

  // Gauss-Seidel path: factored 3x3 cell diagonal blocks (row-major LU with
  // partial pivoting).
  std::vector<std::array<double, 9>> block_lu_;
  std::vector<std::array<int, 3>> block_piv_;
};

}  // namespace ncpflow

#endif
