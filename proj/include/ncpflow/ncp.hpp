#ifndef NCPFLOW_NCP_HPP
#define NCPFLOW_NCP_HPP

#include <vector>

#include "ncpflow/constitutive.hpp"

namespace ncpflow {

enum class CFunctionKind { Min, FischerBurmeister, SmoothFischerBurmeister, SmoothMin };

bool is_smooth_kind(CFunctionKind kind);

/// Per-cell complementarity arguments: a = 1 - S_l, b = C_h P_g - rho_l^h.
struct ConstraintArgs {
  std::vector<double> a;
  std::vector<double> b;
};

/// Evaluates the selected C-function (or its smooth approximation). tau is
/// ignored by the non-smooth kinds; negative tau is rejected.
double c_function(CFunctionKind kind, double a, double b, double tau = 0.0);

/// The non-smooth residual counterpart used on the right-hand side of the
/// Jacobian smoothing iteration: the tau = 0 limit of the selected kind.
double c_function_nonsmooth(CFunctionKind kind, double a, double b);

/// Coefficients (ca, cb) such that the constraint Jacobian row is
/// ca * da/du + cb * db/du.
struct RowCoefficients {
  double ca = 0.0;
  double cb = 0.0;
};

/// Generalized-Jacobian row coefficients: active-set rule for Min, the
/// Eq.-(15)-style subdifferential for Fischer-Burmeister (symmetric choice
/// alpha = beta = 1/sqrt(2) at the origin), and the exact gradient of the
/// smooth approximations for tau > 0. Smooth kinds with tau = 0 fall back to
/// the corresponding non-smooth rule.
RowCoefficients c_function_gradient(CFunctionKind kind, double a, double b, double tau = 0.0);

/// Theta(u): the selected C-function applied componentwise to (a, b).
std::vector<double> assemble_theta(CFunctionKind kind, const ConstraintArgs& args,
                                   double tau = 0.0);

/// Active set A = {j : a_j >= b_j} (ties to A) and its complement I.
struct ActiveSetPartition {
  std::vector<int> active;
  std::vector<int> inactive;
};
ActiveSetPartition active_set_partition(const std::vector<double>& a,
                                        const std::vector<double>& b);

/// max_j |min(a_j, b_j)|: zero exactly on the feasible complementary set.
double complementarity_violation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace ncpflow

#endif
