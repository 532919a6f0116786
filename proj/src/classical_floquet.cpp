#include "optomech/classical_floquet.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>

#include "optomech/error.hpp"
#include "optomech/ode.hpp"

namespace optomech {

namespace {

constexpr cdouble kI{0.0, 1.0};

void check_eps(double eps) {
  if (!std::isfinite(eps) || std::abs(eps) > kMaxDriveEps) {
    std::ostringstream os;
    os << "|eps| = " << std::abs(eps) << " exceeds " << kMaxDriveEps;
    throw Error(ErrorKind::DriveTooStrong, os.str());
  }
  if (std::abs(eps) > kWarnDriveEps) {
    std::ostringstream os;
    os << "eps = " << eps << " is outside the small-drive range; first-order results degrade";
    warn(os.str());
  }
}

void check_order(const MechanicalDrive& d) {
  if (d.n == 1 && d.eps != 0.0) {
    throw Error(ErrorKind::DegenerateOrder,
                "n = 1 with eps != 0 sits on the parametric resonance; 1/(n-1) diverges");
  }
}

// 1/(8(n-1)) scaled by eps; zero when the drive is off so n = 1 stays usable.
double lower_coeff(const MechanicalDrive& d) {
  return d.eps == 0.0 ? 0.0 : d.eps / (8.0 * (d.n - 1));
}
double upper_coeff(const MechanicalDrive& d) { return d.eps / (8.0 * (d.n + 1)); }

}  // namespace

double MechanicalDrive::period() const { return std::numbers::pi / omega; }

MechanicalDrive drive_from_physical(double nu0, double eps_prime, double omega, double gamma,
                                    double n_m) {
  if (!(nu0 > 0.0) || !(omega > 0.0)) {
    throw Error(ErrorKind::NonIntegerRatio, "nu0 and omega must be positive");
  }
  const double ratio = (nu0 * nu0) / (omega * omega);
  const double root = std::round(std::sqrt(ratio));
  if (root < 1.0 || std::abs(ratio - root * root) > 1e-9 * ratio) {
    std::ostringstream os;
    os << "nu0^2/omega^2 = " << ratio << " is not the square of a positive integer";
    throw Error(ErrorKind::NonIntegerRatio, os.str());
  }
  MechanicalDrive d;
  d.nu0 = nu0;
  d.n = static_cast<int>(root);
  d.omega = nu0 / d.n;
  d.eps_prime = eps_prime;
  d.eps = 2.0 * eps_prime * nu0 / (d.omega * d.omega);
  d.gamma = gamma;
  d.n_m = n_m;
  check_eps(d.eps);
  return d;
}

MechanicalDrive drive_from_order(double nu0, int n, double eps, double gamma, double n_m) {
  if (!(nu0 > 0.0) || n < 1) {
    throw Error(ErrorKind::NonIntegerRatio, "need nu0 > 0 and a positive integer order n");
  }
  MechanicalDrive d;
  d.nu0 = nu0;
  d.n = n;
  d.omega = nu0 / n;
  d.eps = eps;
  d.eps_prime = eps * d.omega * d.omega / (2.0 * nu0);
  d.gamma = gamma;
  d.n_m = n_m;
  check_eps(d.eps);
  return d;
}

FloquetFunctions analytic_f(const MechanicalDrive& d, double t) {
  check_order(d);
  const double w = d.omega;
  const int n = d.n;
  const double norm = 1.0 / std::sqrt(n * w);
  const cdouble e0 = std::exp(kI * (n * w * t));
  const cdouble ep = std::exp(kI * ((n + 2) * w * t));
  const cdouble em = std::exp(kI * ((n - 2) * w * t));
  const double cp = upper_coeff(d);
  const double cm = lower_coeff(d);

  FloquetFunctions out;
  out.f = norm * (e0 + cp * ep - cm * em);
  out.fdot = norm * kI * w * (static_cast<double>(n) * e0 + cp * (n + 2.0) * ep - cm * (n - 2.0) * em);
  const GhPair c = gh(d, t);
  out.g = c.g;
  out.h = c.h;
  out.W = wronskian(out.f, out.fdot);
  return out;
}

GhPair gh(const MechanicalDrive& d, double t) {
  check_order(d);
  const double w = d.omega;
  const int n = d.n;
  const double norm = 1.0 / std::sqrt(n * w);
  const cdouble up = std::exp(kI * (2.0 * w * t));
  const cdouble down = std::conj(up);
  const double cp = upper_coeff(d);
  const double cm = lower_coeff(d);
  GhPair out;
  out.g = norm * (1.0 + cp * up - cm * down);
  out.h = norm * kI * w * (static_cast<double>(n) + cp * (n + 2.0) * up - cm * (n - 2.0) * down);
  return out;
}

double wronskian(cdouble f, cdouble fdot) { return std::imag(std::conj(f) * fdot); }

std::vector<FloquetSample> numeric_f(const MechanicalDrive& d, std::span<const double> t_grid,
                                     NumericFloquetOptions options) {
  std::vector<FloquetSample> out;
  if (t_grid.empty()) return out;
  if (t_grid.front() != 0.0) {
    throw Error(ErrorKind::StepFailure, "numeric_f expects the time grid to start at 0");
  }
  const FloquetFunctions init = analytic_f(d, 0.0);
  Eigen::Vector2cd y(init.f, init.fdot);

  const double nu0 = d.nu0, ep = d.eps_prime, w2 = 2.0 * d.omega;
  auto rhs = [&](double t, const Eigen::Vector2cd& s, Eigen::Vector2cd& ds) {
    const double c = std::cos(w2 * t);
    const double nu_sq = options.exact_frequency ? (nu0 + ep * c) * (nu0 + ep * c)
                                                 : nu0 * nu0 + 2.0 * ep * nu0 * c;
    ds(0) = s(1);
    ds(1) = -nu_sq * s(0);
  };

  ode::Tolerances tol;
  tol.rtol = options.rtol;
  tol.atol = 1e-15;
  ode::DormandPrince<Eigen::Vector2cd> stepper(tol);

  double t = 0.0;
  out.reserve(t_grid.size());
  for (double target : t_grid) {
    if (target < t) throw Error(ErrorKind::StepFailure, "time grid must be non-decreasing");
    stepper.advance(rhs, t, y, target);
    out.push_back({target, y(0), y(1)});
  }
  return out;
}

}  // namespace optomech
