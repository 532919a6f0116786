#pragma once

// Embedded Dormand-Prince 5(4) integrator with FSAL and step-size control.
// The state is any Eigen dense object; error is measured normwise:
//   err = max|e_i| / (atol + rtol * max(max|y_i|, max|y_new_i|)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "optomech/error.hpp"

namespace optomech::ode {

struct Tolerances {
  double rtol = 1e-10;
  double atol = 1e-14;
  double h_initial = 0.0;  // 0 picks a step from the first derivative
  double h_max = std::numeric_limits<double>::infinity();
  double h_min = 1e-13;
  std::size_t max_steps = 50'000'000;
};

struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_calls = 0;
};

template <class State>
class DormandPrince {
 public:
  explicit DormandPrince(Tolerances tol = {}) : tol_(tol) {}

  const Stats& stats() const { return stats_; }
  double last_step() const { return h_; }

  /// Advances y from t to t_target. The step size persists across calls, so
  /// repeated calls on a sample grid do not restart the controller.
  template <class Rhs>
  void advance(Rhs&& rhs, double& t, State& y, double t_target) {
    if (t_target <= t) return;
    if (k2_.size() != y.size()) {
      k2_ = k3_ = k4_ = k5_ = k6_ = k7_ = tmp_ = y_new_ = y;
    }
    if (!have_k1_ || t != t_k1_) {
      k1_ = y;
      rhs(t, y, k1_);
      ++stats_.rhs_calls;
      have_k1_ = true;
    }
    if (h_ <= 0.0) h_ = initial_step(y, t_target - t);

    std::size_t steps = 0;
    while (t < t_target) {
      if (++steps > tol_.max_steps) {
        throw Error(ErrorKind::StepFailure, "step budget exhausted at t=" + std::to_string(t));
      }
      double h = std::min({h_, tol_.h_max, t_target - t});
      const bool clamped = h < h_;
      // absorb a tiny remainder into this step instead of taking a sliver next
      if (t_target - (t + h) < 1e-12 * std::max(1.0, std::abs(t_target))) h = t_target - t;

      const double err = trial_step(rhs, t, y, h);
      if (!std::isfinite(err)) {
        h_ = 0.25 * h;
        ++stats_.rejected;
      } else if (err <= 1.0) {
        t = (t_target - (t + h) <= 0.0) ? t_target : t + h;
        y.swap(y_new_);
        k1_.swap(k7_);
        t_k1_ = t;
        ++stats_.accepted;
        const double fac = err == 0.0 ? kMaxGrow
                                      : std::clamp(kSafety * std::pow(err, -0.2), kMaxShrink, kMaxGrow);
        // a step cut short to land on a target says nothing about larger steps
        h_ = clamped ? std::min(h_, h * fac) : h * fac;
      } else {
        h_ = h * std::max(kMaxShrink, kSafety * std::pow(err, -0.2));
        ++stats_.rejected;
      }
      if (h_ < tol_.h_min) {
        throw Error(ErrorKind::StepFailure,
                    "step size underflow (h=" + std::to_string(h_) + ") at t=" + std::to_string(t));
      }
    }
  }

 private:
  static constexpr double kSafety = 0.9;
  static constexpr double kMaxGrow = 5.0;
  static constexpr double kMaxShrink = 0.2;

  double scale(const State& a, const State& b) const {
    return tol_.atol + tol_.rtol * std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  }

  double initial_step(const State& y, double span) const {
    if (tol_.h_initial > 0.0) return std::min(tol_.h_initial, span);
    const double ny = y.cwiseAbs().maxCoeff();
    const double nf = k1_.cwiseAbs().maxCoeff();
    double h = (nf > 0.0) ? 0.01 * std::max(ny, 1e-6) / nf : 1e-3 * span;
    return std::min({h, span, tol_.h_max});
  }

  template <class Rhs>
  double trial_step(Rhs& rhs, double t, const State& y, double h) {
    // Dormand-Prince 5(4) tableau
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    tmp_ = y + (h * a21) * k1_;
    rhs(t + c2 * h, tmp_, k2_);
    tmp_ = y + h * (a31 * k1_ + a32 * k2_);
    rhs(t + c3 * h, tmp_, k3_);
    tmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    rhs(t + c4 * h, tmp_, k4_);
    tmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    rhs(t + c5 * h, tmp_, k5_);
    tmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    rhs(t + h, tmp_, k6_);
    y_new_ = y + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
    rhs(t + h, y_new_, k7_);
    stats_.rhs_calls += 6;

    tmp_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
    return tmp_.cwiseAbs().maxCoeff() / scale(y, y_new_);
  }

  Tolerances tol_;
  Stats stats_;
  double h_ = 0.0;
  bool have_k1_ = false;
  double t_k1_ = 0.0;
  State k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, y_new_;
};

}  // namespace optomech::ode
