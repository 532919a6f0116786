#include "optomech/lindblad_integrator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "optomech/cooling_analytics.hpp"
#include "optomech/csv.hpp"
#include "optomech/error.hpp"

namespace optomech {

namespace {

struct Split {
  int cav;
  int mech;
};

Split split_dims(const DenseOperator& state) {
  const auto& dims = state.dims();
  if (dims.size() < 2) throw Error(ErrorKind::DimensionMismatch, "expected a cavity (x) mechanics state");
  const int mech = dims.back();
  return {state.size() / mech, mech};
}

Matrix reduced_mechanics(const Matrix& rho, Split s) {
  Matrix out = Matrix::Zero(s.mech, s.mech);
  for (int i = 0; i < s.cav; ++i) out += rho.block(i * s.mech, i * s.mech, s.mech, s.mech);
  return out;
}

double min_eigenvalue(const Matrix& rho) {
  const Matrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

const std::vector<double>& Trajectory::series(const std::string& name) const {
  auto it = observables.find(name);
  if (it == observables.end()) throw Error(ErrorKind::InsufficientSpan, "no observable named " + name);
  return it->second;
}

DensityMatrix default_initial_state(const ModelParams& p) {
  return {tensor(fock_projector(p.dims.cav, 0), thermal_state(p.dims.mech, p.drive.n_m)), 0.0};
}

double mech_excitations(const DenseOperator& state, const MechanicalDrive& drive, double t) {
  const Split s = split_dims(state);
  const Matrix reduced = reduced_mechanics(state.matrix(), s);
  const Matrix G = gamma_op(drive, t, s.mech).matrix();
  const Matrix number_op = G.adjoint() * G;
  return (number_op.transpose().cwiseProduct(reduced)).sum().real();
}

double cavity_occupation(const DenseOperator& state) {
  const Split s = split_dims(state);
  double acc = 0.0;
  for (int i = 0; i < s.cav; ++i)
    acc += i * state.matrix().block(i * s.mech, i * s.mech, s.mech, s.mech).trace().real();
  return acc;
}

Trajectory evolve(const DensityMatrix& rho0, const ModelParams& params, double t_end, double sample_dt,
                  const EvolveOptions& options) {
  const std::vector<int> dims = {params.dims.cav, params.dims.mech};
  if (rho0.op.dims() != dims) {
    throw Error(ErrorKind::DimensionMismatch, "initial state does not match the model cutoffs");
  }
  if (!(t_end > rho0.time) || !(sample_dt > 0.0)) {
    throw Error(ErrorKind::StepFailure, "need t_end after the initial time and a positive sample spacing");
  }

  Trajectory traj;
  if (options.transient_end >= 0.0) {
    traj.transient_end = options.transient_end;
  } else {
    const RateSet rs = rates(params.drive, params.cavity, params.coupling);
    traj.transient_end = rs.Gamma_cool > 0.0 ? transient_time(rs) : 0.0;
  }
  auto& m_mech = traj.observables["m_mech"];
  auto& n_cav = traj.observables["n_cav"];
  auto& trace_err = traj.observables["trace_err"];
  traj.min_eigenvalue = std::numeric_limits<double>::infinity();

  LindbladKernel kernel(params, options.frame);
  Matrix y = rho0.op.matrix();
  kernel.from_lab(rho0.time, y);

  ode::Tolerances tol;
  tol.rtol = options.rtol;
  tol.atol = options.atol;
  ode::DormandPrince<Matrix> stepper(tol);
  auto rhs = [&kernel](double t, const Matrix& r, Matrix& d) { kernel.apply(t, r, d); };

  double next_check = rho0.time;
  Matrix lab;
  auto record = [&](double t, bool last) {
    lab = y;
    kernel.to_lab(t, lab);
    const DenseOperator op(lab, dims);
    traj.times.push_back(t);
    m_mech.push_back(mech_excitations(op, params.drive, t));
    n_cav.push_back(cavity_occupation(op));
    const double terr = std::abs(lab.trace() - 1.0);
    trace_err.push_back(terr);
    traj.max_trace_error = std::max(traj.max_trace_error, terr);
    traj.max_hermiticity_error =
        std::max(traj.max_hermiticity_error, (lab - lab.adjoint()).cwiseAbs().maxCoeff());
    if (last || t >= next_check) {
      const double ev = min_eigenvalue(lab);
      traj.min_eigenvalue = std::min(traj.min_eigenvalue, ev);
      if (ev < options.positivity_floor) {
        std::ostringstream os;
        os << "eigenvalue " << ev << " at t=" << t << "; raise the Fock cutoffs";
        throw Error(ErrorKind::PositivityLoss, os.str());
      }
      next_check = t + options.positivity_interval;
    }
    if (options.keep_states) traj.states.push_back({op, t});
  };

  double t = rho0.time;
  record(t, false);
  const double start = std::min(std::max(rho0.time, options.sample_from), t_end);
  if (start > t) {
    stepper.advance(rhs, t, y, start);
    record(t, t >= t_end);
  }
  for (long k = 1; t < t_end; ++k) {
    double target = start + k * sample_dt;
    if (target > t_end - 1e-9 * sample_dt) target = t_end;
    stepper.advance(rhs, t, y, target);
    record(t, t >= t_end);
  }
  traj.stats = stepper.stats();
  return traj;
}

double period_average(const Trajectory& traj, const std::string& name, double period) {
  const std::vector<double>& v = traj.series(name);
  const std::vector<double>& t = traj.times;
  if (t.size() < 2 || !(period > 0.0)) throw Error(ErrorKind::InsufficientSpan, "trajectory too short");
  const double t_last = t.back();
  const double t_first = t_last - period;
  const double slack = 1e-9 * std::max(1.0, std::abs(t_last));
  if (t_first < t.front() - slack || t_first < traj.transient_end - slack) {
    std::ostringstream os;
    os << "final period starts at " << t_first << " but data begins at " << t.front()
       << " and the transient ends at " << traj.transient_end;
    throw Error(ErrorKind::InsufficientSpan, os.str());
  }

  auto it = std::lower_bound(t.begin(), t.end(), t_first - slack);
  std::size_t i = static_cast<std::size_t>(it - t.begin());
  double acc = 0.0;
  double prev_t = t_first;
  double prev_v;
  if (std::abs(t[i] - t_first) <= slack || i == 0) {
    prev_v = v[i];
    prev_t = t[i];
    ++i;
  } else {
    const double w = (t_first - t[i - 1]) / (t[i] - t[i - 1]);
    prev_v = (1.0 - w) * v[i - 1] + w * v[i];
  }
  for (; i < t.size(); ++i) {
    acc += 0.5 * (t[i] - prev_t) * (v[i] + prev_v);
    prev_t = t[i];
    prev_v = v[i];
  }
  return acc / period;
}

double dominant_frequency(const std::vector<double>& times, const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 8 || times.size() != n) throw Error(ErrorKind::InsufficientSpan, "need at least 8 samples");
  const double span = times.back() - times.front();
  const double dt = span / static_cast<double>(n - 1);
  double mean = 0.0;
  for (double x : values) mean += x;
  mean /= static_cast<double>(n);

  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double hann = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * k / static_cast<double>(n - 1));
    w[k] = hann * (values[k] - mean);
  }
  const double bin = 2.0 * std::numbers::pi / span;
  const double step = bin / 16.0;
  const double nyquist = std::numbers::pi / dt;
  double best = 0.0, best_power = -1.0;
  for (double om = 2.0 * bin; om <= nyquist; om += step) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += w[k] * std::polar(1.0, -om * (times[k] - times.front()));
    const double power = std::norm(acc);
    if (power > best_power) {
      best_power = power;
      best = om;
    }
  }
  return best;
}

ConvergenceGate convergence_gate(double base, double refined, double tolerance) {
  ConvergenceGate g;
  g.base = base;
  g.refined = refined;
  const double scale = std::max(std::abs(base), std::abs(refined));
  g.relative_change = scale > 0.0 ? std::abs(refined - base) / scale : 0.0;
  g.passed = std::isfinite(g.relative_change) && g.relative_change < tolerance;
  return g;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<std::pair<std::string, std::string>>& echo) {
  std::vector<std::string> header = {"time", "m_mech", "n_cav", "trace_err"};
  for (const auto& [key, value] : echo) header.push_back(key);
  os << csv::join(header) << '\n';
  const auto& m = traj.series("m_mech");
  const auto& n = traj.series("n_cav");
  const auto& e = traj.series("trace_err");
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::vector<std::string> row = {csv::number(traj.times[i]), csv::number(m[i]), csv::number(n[i]),
                                    csv::number(e[i])};
    for (const auto& [key, value] : echo) row.push_back(value);
    os << csv::join(row) << '\n';
  }
}

}  // namespace optomech
