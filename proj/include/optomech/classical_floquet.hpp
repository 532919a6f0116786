#pragma once

// Classical solution of the modulated oscillator
//   f'' + nu(t)^2 f = 0,   nu(t) = nu0 + eps' cos(2 omega t),
// under the integer condition nu0 = n * omega. The first-order (in eps)
// analytic solution and the coefficient functions g(t), h(t) feed the Floquet
// ladder operators; the numeric integration is the oracle that checks them.

#include <complex>
#include <span>
#include <vector>

namespace optomech {

using cdouble = std::complex<double>;

/// Parametric drive of the mechanical mode plus its bath parameters.
/// Built through the factories below, which enforce nu0 == n * omega and
/// eps == 2 eps' nu0 / omega^2.
struct MechanicalDrive {
  double nu0 = 1.0;
  double omega = 1.0;
  int n = 1;
  double eps = 0.0;
  double eps_prime = 0.0;
  double gamma = 0.0;
  double n_m = 0.0;

  /// Modulation period of nu(t), pi / omega.
  double period() const;
};

inline constexpr double kMaxDriveEps = 0.2;
inline constexpr double kWarnDriveEps = 0.1;

/// From physical frequencies. Throws NonIntegerRatio when nu0^2/omega^2 is not
/// a perfect square (relative tolerance 1e-9) and DriveTooStrong if |eps| > 0.2.
MechanicalDrive drive_from_physical(double nu0, double eps_prime, double omega, double gamma = 0.0,
                                    double n_m = 0.0);

/// From the dimensionless description used by the figures: order n, mean
/// frequency nu0 and eps. omega = nu0 / n.
MechanicalDrive drive_from_order(double nu0, int n, double eps, double gamma = 0.0,
                                 double n_m = 0.0);

struct FloquetFunctions {
  cdouble f;
  cdouble fdot;
  cdouble g;
  cdouble h;
  double W = 0.0;
};

struct FloquetSample {
  double t = 0.0;
  cdouble f;
  cdouble fdot;
};

/// f(t) and its derivative from the first-order solution.
/// DegenerateOrder for n == 1 with eps != 0.
FloquetFunctions analytic_f(const MechanicalDrive& drive, double t);

struct NumericFloquetOptions {
  /// Integrate (nu0 + eps' cos 2wt)^2 instead of the linearised nu0^2 + 2 eps' nu0 cos 2wt.
  bool exact_frequency = false;
  double rtol = 1e-10;
};

/// Integrates the classical equation on t_grid (must start at 0, increasing)
/// from the analytic initial condition. StepFailure if the controller gives up.
std::vector<FloquetSample> numeric_f(const MechanicalDrive& drive, std::span<const double> t_grid,
                                     NumericFloquetOptions options = {});

struct GhPair {
  cdouble g;
  cdouble h;
};

/// Phase-removed coefficients g(t) = e^{-in wt} f(t), h(t) = e^{-in wt} f'(t).
GhPair gh(const MechanicalDrive& drive, double t);

/// Im(conj(f) * fdot). Positive, and W / |f|^2 == nu0 for the undriven solution.
double wronskian(cdouble f, cdouble fdot);

}  // namespace optomech
