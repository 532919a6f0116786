#pragma once

// Adiabatic cooling/heating rates for the driven mechanical mode, the scalar
// covariance dynamics they generate, and closed forms for the mean
// excitation number and its average over one drive period.

#include <Eigen/Dense>
#include <vector>

#include "optomech/classical_floquet.hpp"
#include "optomech/driven_model.hpp"

namespace optomech {

struct RateSet {
  double A_minus_0 = 0.0;
  double A_plus_0 = 0.0;
  double A_minus_eps = 0.0;
  double A_plus_eps = 0.0;
  double A_minus_tilde_0 = 0.0;  // A_minus_0 + gamma (n_m + 1) / 2
  double A_plus_tilde_0 = 0.0;   // A_plus_0 + gamma n_m / 2
  double Gamma_cool = 0.0;       // A_minus_0 - A_plus_0
};

/// Rates from the cavity response at the two mechanical sidebands.
RateSet rates(const MechanicalDrive& drive, const CavityConfig& cfg, const EffectiveCoupling& coupling);

struct InstantRates {
  double A_minus = 0.0;
  double A_plus = 0.0;
};

/// Damping-dressed rates at time t: tilde_0 + eps sin(2 w t) * eps-amplitude.
InstantRates rate_at_time(const RateSet& rs, double eps, double omega, double t);

struct CovarianceState {
  Eigen::Matrix2d matrix = 0.5 * Eigen::Matrix2d::Identity();
  double time = 0.0;

  double trace() const { return matrix.trace(); }
};

/// Integrates d(gamma)/dt = 2 (A+ - A-) gamma + (A+ + A-) I from gamma0 to t_end,
/// sampling every dt_control. Heating when the dressed cooling rate does not
/// exceed the heating rate.
std::vector<CovarianceState> covariance_evolve(const RateSet& rs, const MechanicalDrive& drive,
                                               const CovarianceState& gamma0, double t_end,
                                               double dt_control, double rtol = 1e-10);

/// Late-time closed form of Tr[gamma(t)] (transients dropped). Heating as above.
double trace_analytic(const RateSet& rs, double eps, double omega, double t);

/// 10 / Gamma_cool: the closed form is meant for t beyond this.
double transient_time(const RateSet& rs);
bool past_transient(const RateSet& rs, double t);

/// (trace - 1) / 2, clamped at zero. InvalidTrace below 1 - 1e-3.
double mean_m(double trace);

/// Period average of mean_m(trace_analytic) from its time-independent terms.
double m_bar(const RateSet& rs, double eps, double omega);

/// Same average by composite Simpson quadrature over [0, pi/omega].
double m_bar_quadrature(const RateSet& rs, double eps, double omega, int intervals = 2048);

/// Slow-drive expansion of the average, including the bath-occupancy terms.
/// Warns when omega > 0.3 Gamma_cool.
double m_bar_approx(const RateSet& rs, double eps, double omega, double gamma, double n_m);

/// Weak-damping, closed-form-in-parameters expression for the average.
double m_bar_weak(const CavityConfig& cfg, const MechanicalDrive& drive, const EffectiveCoupling& coupling);

}  // namespace optomech
