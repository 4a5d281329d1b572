#include "ncpflow/constitutive.hpp"

#include <cmath>
#include <stdexcept>

namespace ncpflow {

void VanGenuchtenParams::validate() const {
  if (!(n > 1.0)) throw std::invalid_argument("VanGenuchten: n must be > 1");
  if (!(entry_pressure > 0.0)) throw std::invalid_argument("VanGenuchten: entry pressure must be positive");
  if (s_lr < 0.0 || s_gr < 0.0 || s_lr + s_gr >= 1.0)
    throw std::invalid_argument("VanGenuchten: residual saturations must satisfy 0 <= S_lr, S_gr and S_lr+S_gr < 1");
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("VanGenuchten: eps must be in (0, 0.5)");
}

void FluidParams::validate() const {
  const double fields[] = {mu_l, mu_g, henry, molar_mass_h, molar_mass_w,
                           diffusion, rho_w_std, gas_constant, temperature};
  for (double v : fields)
    if (!(v > 0.0)) throw std::invalid_argument("FluidParams: all parameters must be positive");
}

ValDer effective_saturation(double s_l, const VanGenuchtenParams& vg) {
  const double denom = 1.0 - vg.s_lr - vg.s_gr;
  return {(s_l - vg.s_lr) / denom, 1.0 / denom};
}

namespace {

// Closed-form Mualem-Van Genuchten curves, valid on (0, 1).
ValDer krl_closed_form(double s_le, const VanGenuchtenParams& vg) {
  const double m = vg.m();
  const double u = std::pow(s_le, 1.0 / m);
  const double w = std::pow(1.0 - u, m);
  const double f = 1.0 - w;
  const double sq = std::sqrt(s_le);
  const double value = sq * f * f;
  // dw/ds = -(1-u)^(m-1) * s^(1/m - 1)
  const double dw = -std::pow(1.0 - u, m - 1.0) * std::pow(s_le, 1.0 / m - 1.0);
  const double deriv = 0.5 * f * f / sq - 2.0 * sq * f * dw;
  return {value, deriv};
}

ValDer krg_closed_form(double s_le, const VanGenuchtenParams& vg) {
  const double m = vg.m();
  const double u = std::pow(s_le, 1.0 / m);
  const double r = std::sqrt(1.0 - s_le);
  const double t = std::pow(1.0 - u, 2.0 * m);
  const double value = r * t;
  const double dt = -2.0 * std::pow(1.0 - u, 2.0 * m - 1.0) * std::pow(s_le, 1.0 / m - 1.0);
  const double deriv = -0.5 * t / r + r * dt;
  return {value, deriv};
}

// Both closed forms have unbounded slopes at the endpoints (the exponents
// m - 1 and 2m - 1 are negative for n < 2, and the square roots contribute
// 1/sqrt terms). Inside a band of width kr_eps at each end the curve is
// replaced by the chord to the endpoint: values at 0 and 1 are exact, the
// curve stays monotone in [0,1], and the derivative stays bounded, which
// keeps Newton directions finite when cells sit at a phase transition.
constexpr double kr_eps = 1.0e-2;

ValDer endpoint_chord(double s_le, double s_ref, double end_s, double end_val,
                      const VanGenuchtenParams& vg, ValDer (*closed)(double, const VanGenuchtenParams&)) {
  const ValDer at = closed(s_ref, vg);
  const double slope = (end_val - at.value) / (end_s - s_ref);
  return {at.value + slope * (s_le - s_ref), slope};
}

}  // namespace

ValDer rel_perm_liquid(double s_le, const VanGenuchtenParams& vg) {
  if (s_le <= 0.0) return {0.0, 0.0};
  if (s_le >= 1.0) return {1.0, 0.0};
  if (s_le < kr_eps) return endpoint_chord(s_le, kr_eps, 0.0, 0.0, vg, krl_closed_form);
  if (s_le > 1.0 - kr_eps)
    return endpoint_chord(s_le, 1.0 - kr_eps, 1.0, 1.0, vg, krl_closed_form);
  return krl_closed_form(s_le, vg);
}

ValDer rel_perm_gas(double s_le, const VanGenuchtenParams& vg) {
  if (s_le <= 0.0) return {1.0, 0.0};
  if (s_le >= 1.0) return {0.0, 0.0};
  if (s_le < kr_eps) return endpoint_chord(s_le, kr_eps, 0.0, 1.0, vg, krg_closed_form);
  if (s_le > 1.0 - kr_eps)
    return endpoint_chord(s_le, 1.0 - kr_eps, 1.0, 0.0, vg, krg_closed_form);
  return krg_closed_form(s_le, vg);
}

namespace {

// Closed-form Van Genuchten capillary curve in effective-saturation space,
// valid for s in (0, 1).
ValDer pc_closed_form(double s, const VanGenuchtenParams& vg) {
  const double m = vg.m();
  const double g = std::pow(s, -1.0 / m) - 1.0;
  const double value = vg.entry_pressure * std::pow(g, 1.0 / vg.n);
  const double dg = -(1.0 / m) * std::pow(s, -1.0 / m - 1.0);
  const double deriv = vg.entry_pressure * (1.0 / vg.n) * std::pow(g, 1.0 / vg.n - 1.0) * dg;
  return {value, deriv};
}

}  // namespace

ValDer capillary_pressure(double s_l, const VanGenuchtenParams& vg) {
  const ValDer se = effective_saturation(s_l, vg);
  const double s = se.value;
  ValDer pc;
  if (s < vg.eps) {
    const ValDer at = pc_closed_form(vg.eps, vg);
    pc = {at.value + at.deriv * (s - vg.eps), at.deriv};
  } else if (s > 1.0 - vg.eps) {
    const ValDer at = pc_closed_form(1.0 - vg.eps, vg);
    pc = {at.value + at.deriv * (s - (1.0 - vg.eps)), at.deriv};
  } else {
    pc = pc_closed_form(s, vg);
  }
  return {pc.value, pc.deriv * se.deriv};
}

double gas_pressure(double p_l, double s_l, const VanGenuchtenParams& vg) {
  return p_l + capillary_pressure(s_l, vg).value;
}

double henry_coefficient(const FluidParams& fluid) { return fluid.c_h(); }
double ideal_gas_coefficient(const FluidParams& fluid) { return fluid.c_v(); }

ValDer mobility(Phase phase, double s_l, const FluidParams& fluid, const VanGenuchtenParams& vg) {
  const ValDer se = effective_saturation(s_l, vg);
  if (phase == Phase::Liquid) {
    const ValDer kr = rel_perm_liquid(se.value, vg);
    return {kr.value / fluid.mu_l, kr.deriv * se.deriv / fluid.mu_l};
  }
  const ValDer kr = rel_perm_gas(se.value, vg);
  return {kr.value / fluid.mu_g, kr.deriv * se.deriv / fluid.mu_g};
}

}  // namespace ncpflow
