#include "ncpflow/ncp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncpflow {

bool is_smooth_kind(CFunctionKind kind) {
  return kind == CFunctionKind::SmoothFischerBurmeister || kind == CFunctionKind::SmoothMin;
}

namespace {
void check_tau(double tau) {
  if (tau < 0.0) throw std::invalid_argument("smoothing parameter tau must be >= 0");
}
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

double c_function(CFunctionKind kind, double a, double b, double tau) {
  check_tau(tau);
  switch (kind) {
    case CFunctionKind::Min:
      return std::min(a, b);
    case CFunctionKind::FischerBurmeister:
      return std::sqrt(a * a + b * b) - (a + b);
    case CFunctionKind::SmoothFischerBurmeister:
      return std::sqrt(a * a + b * b + 2.0 * tau) - (a + b);
    case CFunctionKind::SmoothMin:
      return (a + b) - std::sqrt((a - b) * (a - b) + 4.0 * tau);
  }
  return 0.0;
}

double c_function_nonsmooth(CFunctionKind kind, double a, double b) {
  switch (kind) {
    case CFunctionKind::Min:
      return std::min(a, b);
    case CFunctionKind::FischerBurmeister:
    case CFunctionKind::SmoothFischerBurmeister:
      return std::sqrt(a * a + b * b) - (a + b);
    case CFunctionKind::SmoothMin:
      // tau = 0 limit of the Chen-Harker-Kanzow-Smale function: 2 min(a,b).
      return (a + b) - std::abs(a - b);
  }
  return 0.0;
}

RowCoefficients c_function_gradient(CFunctionKind kind, double a, double b, double tau) {
  check_tau(tau);
  switch (kind) {
    case CFunctionKind::Min:
      // Active set: a >= b selects the b-row, otherwise the a-row.
      return (a >= b) ? RowCoefficients{0.0, 1.0} : RowCoefficients{1.0, 0.0};
    case CFunctionKind::FischerBurmeister: {
      const double r2 = a * a + b * b;
      if (r2 == 0.0) return {kInvSqrt2 - 1.0, kInvSqrt2 - 1.0};
      const double r = std::sqrt(r2);
      return {a / r - 1.0, b / r - 1.0};
    }
    case CFunctionKind::SmoothFischerBurmeister: {
      if (tau == 0.0) return c_function_gradient(CFunctionKind::FischerBurmeister, a, b);
      const double r = std::sqrt(a * a + b * b + 2.0 * tau);
      return {a / r - 1.0, b / r - 1.0};
    }
    case CFunctionKind::SmoothMin: {
      if (tau == 0.0) {
        if (a > b) return {0.0, 2.0};
        if (a < b) return {2.0, 0.0};
        return {1.0, 1.0};
      }
      const double q = std::sqrt((a - b) * (a - b) + 4.0 * tau);
      return {1.0 - (a - b) / q, 1.0 + (a - b) / q};
    }
  }
  return {};
}

std::vector<double> assemble_theta(CFunctionKind kind, const ConstraintArgs& args, double tau) {
  if (args.a.size() != args.b.size())
    throw std::invalid_argument("assemble_theta: argument lengths differ");
  std::vector<double> theta(args.a.size());
  for (std::size_t j = 0; j < theta.size(); ++j)
    theta[j] = c_function(kind, args.a[j], args.b[j], tau);
  return theta;
}

ActiveSetPartition active_set_partition(const std::vector<double>& a,
                                        const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("active_set_partition: argument lengths differ");
  ActiveSetPartition p;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] >= b[j])
      p.active.push_back(static_cast<int>(j));
    else
      p.inactive.push_back(static_cast<int>(j));
  }
  return p;
}

double complementarity_violation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("complementarity_violation: argument lengths differ");
  double v = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    v = std::max(v, std::abs(std::min(a[j], b[j])));
  return v;
}

}  // namespace ncpflow
