#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "optomech/classical_floquet.hpp"
#include "optomech/cli.hpp"
#include "optomech/damping_basis.hpp"
#include "optomech/error.hpp"
#include "optomech/lindblad_integrator.hpp"

namespace optomech::cli {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

Check check(std::string name, bool ok, std::string detail) { return {std::move(name), ok, std::move(detail)}; }

RateSet figure_rates(double delta, double eps, double g = 0.5, double kappa = 0.25) {
  Scenario s;
  s.delta = delta;
  s.kappa = kappa;
  s.g_eff = g;
  return rates(s.drive(eps), s.cavity(), s.coupling());
}

Check classical_solution() {
  const MechanicalDrive d = drive_from_order(1.0, 2, 1.0 / 18);
  std::vector<double> grid(401);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = d.period() * i / (grid.size() - 1);
  const auto num = numeric_f(d, grid);
  double dev = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    dev = std::max(dev, std::abs(analytic_f(d, grid[i]).f - num[i].f));
    scale = std::max(scale, std::abs(num[i].f));
  }
  const double rel = dev / scale, tol = 5.0 * d.eps * d.eps;
  return check("first-order classical solution vs integration", rel <= tol, sci(rel) + " <= " + sci(tol));
}

Check commutator() {
  const MechanicalDrive d = drive_from_order(1.0, 2, 1.0 / 18);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, d.period());
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const DenseOperator G = gamma_op(d, u(rng), 16);
    const Matrix c = commutator(G, G.adjoint()).matrix().topLeftCorner(10, 10);
    worst = std::max(worst, (c - Matrix::Identity(10, 10)).cwiseAbs().maxCoeff());
  }
  return check("Floquet ladder commutator", worst <= 1e-10, sci(worst) + " <= 1e-10");
}

Check damping(double n_p, int dim, int order) {
  double res = 0.0, pair = 0.0;
  for (int n = 0; n <= order; ++n)
    for (int j = -(order - n); j <= order - n; ++j) {
      const DampingEigenstate s = damping_eigenstate(n, j, 0.9, 0.3, n_p, dim);
      const Matrix L = cavity_generator_apply(s.right, 0.9, 0.3, n_p).matrix();
      res = std::max(res, (L - s.eigenvalue * s.right.matrix()).cwiseAbs().maxCoeff());
      for (int n2 = 0; n2 + std::abs(j) <= order; ++n2) {
        const cdouble p = (s.right.matrix() * left_state(n2, j, n_p, dim).matrix()).trace();
        pair = std::max(pair, std::abs(p - (n == n2 ? 1.0 : 0.0)));
      }
    }
  const double worst = std::max(res, pair);
  return check("damping basis n_p=" + sci(n_p) + " dim=" + std::to_string(dim), worst <= 1e-8,
               "residual " + sci(res) + ", pairing " + sci(pair));
}

Check covariance_fixed_point() {
  const RateSet rs = figure_rates(-0.9, 0.0);
  const MechanicalDrive d = drive_from_order(1.0, 2, 0.0);
  const double late = covariance_evolve(rs, d, {}, 40.0 / rs.Gamma_cool, 1.0).back().trace();
  const double closed = trace_analytic(rs, 0.0, d.omega, 0.0);
  const double rel = std::abs(late / closed - 1.0);
  return check("undriven covariance integration vs closed form", rel <= 1e-8, sci(rel) + " <= 1e-8");
}

Check sideband_identity() {
  double worst = 0.0;
  for (double delta : {-1.2, -1.0, -0.9469, -0.8}) {
    const RateSet rs = figure_rates(delta, 0.0);
    const double m = mean_m(trace_analytic(rs, 0.0, 0.5, 0.0));
    const double expect = ((delta + 1.0) * (delta + 1.0) + 0.25 * 0.25 / 4) / (-4.0 * delta);
    worst = std::max(worst, std::abs(m - expect));
  }
  return check("undriven sideband limit", worst <= 1e-12, sci(worst) + " <= 1e-12");
}

Check weak_undriven() {
  Scenario s;
  s.delta = -1.0;
  const double m = m_bar_weak(s.cavity(), s.drive(0.0), s.coupling());
  const double dev = std::abs(m - 3.90625e-3);
  return check("weak-damping expression at the red sideband", dev <= 1e-12, sci(dev) + " <= 1e-12");
}

Check crossing() {
  const double delta = -std::sqrt(1.0 + 0.25 * 0.25 / 4);
  double worst = 0.0;
  for (double e : {1.0 / 18, -1.0 / 18}) {
    const double driven = m_bar(figure_rates(delta, e), e, 0.5);
    const double plain = m_bar(figure_rates(delta, 0.0), 0.0, 0.5);
    worst = std::max(worst, std::abs(driven / plain - 1.0));
  }
  return check("driven and undriven averages cross", worst <= 1e-10, sci(worst) + " <= 1e-10");
}

Check sign_structure() {
  const double edge = std::sqrt(1.0 + 0.25 * 0.25 / 4);
  int wrong = 0, total = 0;
  for (int i = 0; i <= 80; ++i) {
    const double delta = -1.2 + 0.4 * i / 80;
    if (std::abs(std::abs(delta) - edge) < 1e-3) continue;
    const double driven = m_bar(figure_rates(delta, 1.0 / 18), 1.0 / 18, 0.5);
    const double plain = m_bar(figure_rates(delta, 0.0), 0.0, 0.5);
    const bool below = driven < plain;
    wrong += below != (std::abs(delta) < edge);
    ++total;
  }
  return check("driven average below undriven inside the crossing", wrong == 0,
               std::to_string(wrong) + " of " + std::to_string(total) + " points on the wrong side");
}

Check slow_drive_limit() {
  const RateSet rs = figure_rates(-0.9469, 1.0 / 18);
  const double w = 1e-6 * rs.Gamma_cool;
  const double rel = std::abs(trace_analytic(rs, 1.0 / 18, w, 0.0) / trace_analytic(rs, 0.0, w, 0.0) - 1.0);
  return check("vanishing drive frequency recovers undriven trace", rel <= 1e-6, sci(rel) + " <= 1e-6");
}

Check average_by_quadrature() {
  double worst = 0.0;
  for (double delta : {-1.2, -1.0, -0.8})
    for (double e : {-1.0 / 18, 1.0 / 18}) {
      const RateSet rs = figure_rates(delta, e);
      worst = std::max(worst, std::abs(m_bar(rs, e, 0.5) - m_bar_quadrature(rs, e, 0.5)));
    }
  return check("period average closed form vs quadrature", worst <= 1e-8, sci(worst) + " <= 1e-8");
}

Check heating_reported() {
  Scenario s = preset("fig2");
  s.sweep = Sweep{"delta", -0.2, 0.2, 3};
  const Table t = engine_table(s, Engine::Analytic);
  const bool ok = t.rows[2][1] == "NaN" && t.rows[2][4] == "Heating" && t.rows[0][4].empty();
  return check("heating point marked in sweep", ok, ok ? "NaN with reason" : "missing reason");
}

Check deterministic() {
  const Scenario s = preset("fig2");
  const bool same = engine_table(s, Engine::Analytic).to_csv() == engine_table(s, Engine::Analytic).to_csv();
  return check("sweep output is reproducible", same, same ? "identical" : "differs");
}

Check undriven_columns() {
  Scenario s = preset("fig1");
  s.eps = 0.0;
  const Table t = engine_table(s, Engine::Analytic);
  bool same = true;
  for (const auto& r : t.rows) same = same && r[1] == r[2];
  return check("zero drive gives identical driven and undriven columns", same, same ? "identical" : "differs");
}

struct LindbladRun {
  double average = 0.0;
  double frequency = 0.0;
  double trace_err = 0.0;
  double min_eig = 0.0;
};

LindbladRun full_model(int cav, int mech) {
  ModelParams p;
  p.drive = drive_from_order(1.0, 2, 1.0 / 18);
  p.cavity.delta = -0.9469;
  p.cavity.kappa = 0.25;
  p.coupling = coupling_from_geff(p.cavity, 0.05);
  p.dims = {cav, mech};
  const double T = p.drive.period();
  const RateSet rs = rates(p.drive, p.cavity, p.coupling);
  const double t0 = std::ceil(transient_time(rs) / T) * T;
  EvolveOptions o;
  o.sample_from = t0;
  o.transient_end = t0;
  const Trajectory tr = evolve(default_initial_state(p), p, t0 + 4 * T, T / 64, o);
  std::vector<double> times(tr.times.begin() + 1, tr.times.end());
  std::vector<double> m(tr.series("m_mech").begin() + 1, tr.series("m_mech").end());
  return {period_average(tr, "m_mech", T), dominant_frequency(times, m), tr.max_trace_error, tr.min_eigenvalue};
}

}  // namespace

std::vector<Check> verify(VerifyLevel level, int cutoff) {
  std::vector<Check> out;
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back(check(name, false, e.what()));
    }
  };
  guarded("classical solution", classical_solution);
  guarded("commutator", commutator);
  guarded("damping basis", [] { return damping(0.0, 16, 6); });
  guarded("damping basis warm", [] { return damping(0.5, 60, 4); });
  guarded("covariance", covariance_fixed_point);
  guarded("sideband", sideband_identity);
  guarded("weak", weak_undriven);
  guarded("crossing", crossing);
  guarded("sign", sign_structure);
  guarded("slow drive", slow_drive_limit);
  guarded("quadrature", average_by_quadrature);
  guarded("heating", heating_reported);
  guarded("determinism", deterministic);
  guarded("zero drive", undriven_columns);
  if (level == VerifyLevel::Fast) return out;

  CavityConfig cav;
  cav.delta = -0.9469;
  const RateSet rs = rates(drive_from_order(1.0, 2, 1.0 / 18), cav, coupling_from_geff(cav, 0.05));
  const double expect = m_bar(rs, 1.0 / 18, 0.5);
  LindbladRun base{};
  bool have_base = false;
  guarded("master equation", [&] {
    base = full_model(cutoff, cutoff);
    have_base = true;
    const double rel = std::abs(base.average / expect - 1.0);
    return check("master equation average vs closed form", rel <= 0.15,
                 "relative " + sci(rel) + " <= 0.15 (" + sci(base.average) + " vs " + sci(expect) + ")");
  });
  if (have_base) {
    const double fdev = std::abs(base.frequency / 1.0 - 1.0);
    out.push_back(check("master equation oscillates at twice the drive frequency", fdev <= 0.02,
                        "peak " + sci(base.frequency) + " vs 1"));
    out.push_back(check("master equation invariants", base.trace_err <= 1e-8 && base.min_eig >= -1e-8,
                        "trace error " + sci(base.trace_err) + ", min eigenvalue " + sci(base.min_eig)));
    guarded("convergence gate", [&] {
      const LindbladRun fine = full_model(2 * cutoff, 2 * cutoff);
      const ConvergenceGate g = convergence_gate(base.average, fine.average);
      return check("doubled cutoffs move the average by under 1%", g.passed,
                   "cutoff " + std::to_string(cutoff) + ": relative change " + sci(g.relative_change));
    });
  }
  return out;
}

int report(const std::vector<Check>& checks, std::ostream& os) {
  int failed = 0;
  for (const Check& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    failed += !c.passed;
  }
  os << checks.size() - failed << " passed, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace optomech::cli
