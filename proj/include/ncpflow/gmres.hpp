#ifndef NCPFLOW_GMRES_HPP
#define NCPFLOW_GMRES_HPP

#include <vector>

#include "ncpflow/sparse.hpp"

namespace ncpflow {

/// Linear operator interface for preconditioners: out = M^{-1} in.
class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  virtual void apply(const std::vector<double>& in, std::vector<double>& out) const = 0;
};

class IdentityPreconditioner final : public Preconditioner {
 public:
  void apply(const std::vector<double>& in, std::vector<double>& out) const override {
    out = in;
  }
};

struct GmresConfig {
  int restart = 30;
  int max_iterations = 2000;
  double rel_tol = 1.0e-12;
};

struct GmresResult {
  std::vector<double> x;
  int iterations = 0;
  bool converged = false;
  double residual_norm = 0.0;  ///< true residual ||A x - b|| at exit
};

/// Restarted GMRES with right preconditioning; the convergence test is on the
/// true (unpreconditioned) residual, relative to ||b||. Never throws on
/// non-convergence; the result carries converged = false instead.
GmresResult gmres_solve(const SparseMatrix& a, const std::vector<double>& b,
                        const std::vector<double>& x0, const Preconditioner& precond,
                        const GmresConfig& config);

}  // namespace ncpflow

#endif
