#ifndef NCPFLOW_CONSTITUTIVE_HPP
#define NCPFLOW_CONSTITUTIVE_HPP

namespace ncpflow {

/// A value together with its derivative with respect to the evaluation input.
struct ValDer {
  double value = 0.0;
  double deriv = 0.0;
};

enum class Phase { Liquid, Gas };

/// Van Genuchten parameters with the epsilon regularization of the capillary
/// curve. The regularization junctions sit at S_le = eps and S_le = 1 - eps.
struct VanGenuchtenParams {
  double entry_pressure = 2.0e6;  ///< Pa
  double n = 1.49;                ///< > 1
  double s_lr = 0.4;              ///< residual liquid saturation
  double s_gr = 0.0;              ///< residual gas saturation
  double eps = 1.0e-5;

  double m() const { return 1.0 - 1.0 / n; }
  void validate() const;
};

/// Component and phase constants. C_h and C_v are always derived on the fly
/// from the stored fields.
struct FluidParams {
  double mu_l = 1.0e-9;           ///< Pa s
  double mu_g = 9.0e-6;           ///< Pa s
  double henry = 7.65e-6;         ///< mol/Pa/m^3
  double molar_mass_h = 2.0e-3;   ///< kg/mol
  double molar_mass_w = 1.0e-2;   ///< kg/mol
  double diffusion = 3.0e-9;      ///< m^2/s
  double rho_w_std = 1.0e3;       ///< kg/m^3
  double gas_constant = 8.314;    ///< J/(mol K)
  double temperature = 303.0;     ///< K

  /// Henry coefficient C_h = H * M_h, kg/(m^3 Pa).
  double c_h() const { return henry * molar_mass_h; }
  /// Ideal-gas coefficient C_v = M_h / (R T), kg/(m^3 Pa).
  double c_v() const { return molar_mass_h / (gas_constant * temperature); }

  void validate() const;
};

/// Affine map to effective saturation; derivative is with respect to S_l.
ValDer effective_saturation(double s_l, const VanGenuchtenParams& vg);

/// Relative permeabilities as functions of the effective saturation, which is
/// clamped to [0,1] before evaluation. Derivatives are with respect to S_le.
ValDer rel_perm_liquid(double s_le, const VanGenuchtenParams& vg);
ValDer rel_perm_gas(double s_le, const VanGenuchtenParams& vg);

/// Regularized capillary pressure as a function of the (unclamped) liquid
/// saturation; linear continuation outside the junctions with matched slope.
/// Derivative is with respect to S_l.
ValDer capillary_pressure(double s_l, const VanGenuchtenParams& vg);

/// P_g = P_l + P_c(S_l); derivative of the returned value with respect to P_l
/// is 1, the S_l sensitivity is the capillary derivative.
double gas_pressure(double p_l, double s_l, const VanGenuchtenParams& vg);

double henry_coefficient(const FluidParams& fluid);
double ideal_gas_coefficient(const FluidParams& fluid);

/// Phase mobility kr/mu as a function of S_l; derivative with respect to S_l.
ValDer mobility(Phase phase, double s_l, const FluidParams& fluid, const VanGenuchtenParams& vg);

}  // namespace ncpflow

#endif
