#include "optomech/cooling_analytics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "optomech/error.hpp"
#include "optomech/ode.hpp"

namespace optomech {

namespace {

void require_cooling(const RateSet& rs) {
  if (!(rs.A_minus_tilde_0 > rs.A_plus_tilde_0)) {
    std::ostringstream os;
    os << "dressed heating rate " << rs.A_plus_tilde_0 << " >= cooling rate " << rs.A_minus_tilde_0;
    throw Error(ErrorKind::Heating, os.str());
  }
}

}  // namespace

RateSet rates(const MechanicalDrive& drive, const CavityConfig& cfg, const EffectiveCoupling& coupling) {
  const double g2 = coupling.g_eff * coupling.g_eff;
  const double k = cfg.kappa;
  const double dm = cfg.delta + drive.nu0;  // lower sideband (cooling)
  const double dp = cfg.delta - drive.nu0;  // upper sideband (heating)
  const double lm = dm * dm + 0.25 * k * k;
  const double lp = dp * dp + 0.25 * k * k;

  RateSet rs;
  rs.A_minus_0 = 0.5 * g2 * k / lm;
  rs.A_plus_0 = 0.5 * g2 * k / lp;
  rs.A_minus_eps = 0.5 * g2 * dm / (drive.n * lm);
  rs.A_plus_eps = 0.5 * g2 * dp / (drive.n * lp);
  rs.A_minus_tilde_0 = rs.A_minus_0 + 0.5 * drive.gamma * (drive.n_m + 1.0);
  rs.A_plus_tilde_0 = rs.A_plus_0 + 0.5 * drive.gamma * drive.n_m;
  rs.Gamma_cool = rs.A_minus_0 - rs.A_plus_0;
  return rs;
}

InstantRates rate_at_time(const RateSet& rs, double eps, double omega, double t) {
  const double s = eps * std::sin(2.0 * omega * t);
  return {rs.A_minus_tilde_0 + s * rs.A_minus_eps, rs.A_plus_tilde_0 + s * rs.A_plus_eps};
}

std::vector<CovarianceState> covariance_evolve(const RateSet& rs, const MechanicalDrive& drive,
                                               const CovarianceState& gamma0, double t_end,
                                               double dt_control, double rtol) {
  require_cooling(rs);
  if (!(dt_control > 0.0)) throw Error(ErrorKind::StepFailure, "sample spacing must be positive");

  auto rhs = [&](double t, const Eigen::Matrix2d& g, Eigen::Matrix2d& dg) {
    const InstantRates r = rate_at_time(rs, drive.eps, drive.omega, t);
    dg = 2.0 * (r.A_plus - r.A_minus) * g + (r.A_plus + r.A_minus) * Eigen::Matrix2d::Identity();
  };

  ode::Tolerances tol;
  tol.rtol = rtol;
  tol.atol = 1e-14;
  ode::DormandPrince<Eigen::Matrix2d> stepper(tol);

  std::vector<CovarianceState> out;
  double t = gamma0.time;
  Eigen::Matrix2d y = gamma0.matrix;
  out.push_back({y, t});
  for (long k = 1; t < t_end; ++k) {
    const double target = std::min(gamma0.time + k * dt_control, t_end);
    stepper.advance(rhs, t, y, target);
    out.push_back({y, t});
  }
  return out;
}

double trace_analytic(const RateSet& rs, double eps, double omega, double t) {
  require_cooling(rs);
  const double a = rs.A_plus_tilde_0 - rs.A_minus_tilde_0;
  const double s = rs.A_plus_tilde_0 + rs.A_minus_tilde_0;
  const double sum_eps = rs.A_plus_eps + rs.A_minus_eps;
  const double diff_eps = rs.A_plus_eps - rs.A_minus_eps;
  const double den = a * a + omega * omega;
  const double ph = 2.0 * omega * t;

  return s / (-a) - eps * sum_eps * a * std::sin(ph) / den - eps * sum_eps * omega * std::cos(ph) / den +
         (eps / omega) * diff_eps * a * s / den - (eps / omega) * diff_eps * s / a;
}

double transient_time(const RateSet& rs) { return 10.0 / rs.Gamma_cool; }

bool past_transient(const RateSet& rs, double t) { return rs.Gamma_cool > 0.0 && t >= transient_time(rs); }

double mean_m(double trace) {
  if (!std::isfinite(trace) || trace < 1.0 - 1e-3) {
    std::ostringstream os;
    os << "covariance trace " << trace << " violates the uncertainty bound";
    throw Error(ErrorKind::InvalidTrace, os.str());
  }
  return std::max(0.0, 0.5 * (trace - 1.0));
}

double m_bar(const RateSet& rs, double eps, double omega) {
  require_cooling(rs);
  const double a = rs.A_plus_tilde_0 - rs.A_minus_tilde_0;
  const double s = rs.A_plus_tilde_0 + rs.A_minus_tilde_0;
  const double diff_eps = rs.A_plus_eps - rs.A_minus_eps;
  const double den = a * a + omega * omega;
  const double constant = s / (-a) + (eps / omega) * diff_eps * a * s / den - (eps / omega) * diff_eps * s / a;
  return 0.5 * (constant - 1.0);
}

double m_bar_quadrature(const RateSet& rs, double eps, double omega, int intervals) {
  if (intervals < 2) intervals = 2;
  if (intervals % 2) ++intervals;
  const double T = std::numbers::pi / omega;
  const double h = T / intervals;
  double acc = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * trace_analytic(rs, eps, omega, i * h);
  }
  const double mean_trace = acc * h / 3.0 / T;
  return 0.5 * (mean_trace - 1.0);
}

double m_bar_approx(const RateSet& rs, double eps, double omega, double gamma, double n_m) {
  if (omega > 0.3 * rs.Gamma_cool) {
    std::ostringstream os;
    os << "omega = " << omega << " is not small against Gamma_cool = " << rs.Gamma_cool
       << "; the slow-drive expansion is unreliable";
    warn(os.str());
  }
  const double G = rs.Gamma_cool + 0.5 * gamma;
  const double diff_eps = rs.A_plus_eps - rs.A_minus_eps;
  const double cube = 2.0 * G * G * G;
  const double at_zero_bath =
      rs.A_plus_0 / G + eps * omega * (rs.A_minus_0 + rs.A_plus_0 + 0.5 * gamma) / cube * diff_eps;
  return at_zero_bath + gamma * n_m / G + eps * omega * gamma * n_m / cube * diff_eps;
}

double m_bar_weak(const CavityConfig& cfg, const MechanicalDrive& drive, const EffectiveCoupling& coupling) {
  const double nu = drive.nu0, d = cfg.delta, k2 = 0.25 * cfg.kappa * cfg.kappa;
  const double g2 = coupling.g_eff * coupling.g_eff;
  const double base = -((nu + d) * (nu + d) + k2) / (4.0 * d * nu);
  const double product = (nu * nu - d * d + k2) * (nu * nu + d * d + k2) * ((nu + d) * (nu + d) + k2) *
                         ((nu - d) * (nu - d) + k2);
  const double pre = drive.eps * drive.omega /
                     (32.0 * d * d * d * cfg.kappa * cfg.kappa * nu * nu * nu * g2);
  return base + pre * product;
}

}  // namespace optomech
