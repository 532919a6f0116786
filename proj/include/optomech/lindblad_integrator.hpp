#pragma once

// Time evolution of the full driven master equation and the observables
// taken from it.

#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "optomech/driven_model.hpp"
#include "optomech/lindblad_kernel.hpp"
#include "optomech/ode.hpp"

namespace optomech {

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;  // lab frame; empty unless requested
  std::map<std::string, std::vector<double>> observables;

  double transient_end = 0.0;    // averages are taken after this time
  double min_eigenvalue = 0.0;   // smallest eigenvalue seen at positivity checks
  double max_trace_error = 0.0;  // over all samples
  double max_hermiticity_error = 0.0;
  ode::Stats stats;

  const std::vector<double>& series(const std::string& name) const;
};

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-12;
  Frame frame = Frame::Interaction;
  bool keep_states = false;
  /// Spacing of full eigenvalue checks (the final state is always checked).
  double positivity_interval = 50.0;
  double positivity_floor = -1e-4;
  /// Negative: 10 / Gamma_cool from the adiabatic rates (0 if not cooling).
  double transient_end = -1.0;
  /// Samples between the initial time and this time are skipped, letting the
  /// step controller run free through the transient.
  double sample_from = -std::numeric_limits<double>::infinity();
};

/// vacuum (x) thermal(n_m) on the model's cutoffs.
DensityMatrix default_initial_state(const ModelParams& params);

/// Samples at rho0.time, then every sample_dt from max(rho0.time, sample_from)
/// to t_end. Observables: m_mech, n_cav, trace_err. StepFailure from the
/// integrator, PositivityLoss when an eigenvalue drops below the floor.
Trajectory evolve(const DensityMatrix& rho0, const ModelParams& params, double t_end, double sample_dt,
                  const EvolveOptions& options = {});

/// Re Tr[(1 (x) Gamma^dag Gamma) rho] with Gamma taken at time t. The state's
/// last subsystem is the mechanics.
double mech_excitations(const DenseOperator& state, const MechanicalDrive& drive, double t);

/// Tr[(a^dag a (x) 1) rho].
double cavity_occupation(const DenseOperator& state);

/// Trapezoidal mean of an observable over the final full period of the run.
/// InsufficientSpan unless that period lies after the transient marker.
double period_average(const Trajectory& traj, const std::string& name, double period);

/// Angular frequency of the largest non-DC spectral peak of a uniformly
/// sampled series (mean removed, Hann window, 16x oversampled scan).
double dominant_frequency(const std::vector<double>& times, const std::vector<double>& values);

struct ConvergenceGate {
  double base = 0.0;
  double refined = 0.0;
  double relative_change = 0.0;
  bool passed = false;
};

/// Compares an average at the base cutoffs with the same average at doubled
/// cutoffs; passes below the relative tolerance.
ConvergenceGate convergence_gate(double base, double refined, double tolerance = 0.01);

/// time, m_mech, n_cav, trace_err plus the given constant columns on every row.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<std::pair<std::string, std::string>>& echo = {});

}  // namespace optomech
