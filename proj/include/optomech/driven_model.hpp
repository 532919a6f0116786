#pragma once

// Linearised driven optomechanical model in the displaced frame:
//   H(t) = -delta a^dag a + nu0 Gamma^dag Gamma - H_int(t)
// with Lindblad damping of the cavity (rate kappa, bath n_p) and of the
// Floquet mode (rate gamma, bath n_m). Dissipators use the 2 L rho L^dag
// convention, so a term c D[L] decays populations at rate 2c.

#include <complex>
#include <vector>

#include "optomech/classical_floquet.hpp"
#include "optomech/operator_algebra.hpp"

namespace optomech {

struct CavityConfig {
  double delta = -1.0;  // laser minus cavity frequency
  double kappa = 0.25;  // energy decay rate, > 0
  double n_p = 0.0;     // bath occupancy
  double Omega = 0.0;   // pump strength
  double chi0 = 0.0;    // single-photon coupling
};

/// Displaced-cavity amplitude and the combination g_eff = chi0 |alpha0|
/// that sets every rate. Only the product chi0 * alpha0 enters the dynamics.
struct EffectiveCoupling {
  cdouble alpha0;
  double chi0 = 0.0;
  double g_eff = 0.0;

  cdouble amplitude() const { return chi0 * alpha0; }
};

/// Omega / (2 delta + i kappa). The mechanical displacement is zero.
cdouble alpha0(const CavityConfig& cfg);

/// Coupling from Omega and chi0 in cfg.
EffectiveCoupling coupling_from_pump(const CavityConfig& cfg);

/// Coupling from g_eff alone; alpha0 is a unit phasor carrying the phase of
/// 1/(2 delta + i kappa) and chi0 = g_eff.
EffectiveCoupling coupling_from_geff(const CavityConfig& cfg, double g_eff);

/// Gamma(t) = u(t) b + v(t) b^dag.
struct LadderCoefficients {
  cdouble u;
  cdouble v;
};

/// Coefficients of the phase-removed Floquet lowering operator, rescaled so
/// that |u|^2 - |v|^2 = 1 holds exactly (the first-order g, h satisfy it to
/// O(eps^2) only).
LadderCoefficients ladder_coefficients(const MechanicalDrive& drive, double t);

/// |u|^2 - |v|^2 before rescaling, i.e. Im(h conj(g)).
double raw_commutator(const MechanicalDrive& drive, double t);

/// (1/2i)[sqrt2 h x - sqrt2 g p] on a mech_dim level space, rescaled as above.
/// mech_dim >= 4.
DenseOperator gamma_op(const MechanicalDrive& drive, double t, int mech_dim);

/// Same without the rescaling, straight from the first-order g and h.
DenseOperator gamma_op_raw(const MechanicalDrive& drive, double t, int mech_dim);

/// Weight multiplying Gamma in the interaction,
/// 1 + eps e^{-2iwt}/(8(n+1)) - eps e^{2iwt}/(8(n-1)); Gamma^dag gets the conjugate.
cdouble interaction_weight(const MechanicalDrive& drive, double t);

struct ModelDims {
  int cav = 12;
  int mech = 12;
};

struct ModelParams {
  MechanicalDrive drive;
  CavityConfig cavity;
  EffectiveCoupling coupling;
  ModelDims dims;
};

/// Full Hamiltonian on cavity (x) mechanics. Dims must be at least 4 each.
DenseOperator hamiltonian(const MechanicalDrive& drive, const CavityConfig& cfg,
                          const EffectiveCoupling& coupling, double t, ModelDims dims);

struct JumpTerm {
  double rate = 0.0;  // prefactor c of c D[L]
  DenseOperator op;
};

/// Cavity loss/gain and Floquet-mode loss/gain at time t (zero-rate terms kept).
std::vector<JumpTerm> jump_terms(const ModelParams& p, double t);

/// Dense reference generator: -i[H, rho] + sum c D[L] rho. Serial, no
/// Hermiticity assumption on rho.
DenseOperator liouvillian_apply(const DenseOperator& rho, double t, const ModelParams& p);

/// Full superoperator acting on column-stacked rho, for small spaces.
Matrix liouvillian_matrix(double t, const ModelParams& p);

}  // namespace optomech
