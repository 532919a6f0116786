#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "optomech/cli.hpp"
#include "optomech/csv.hpp"
#include "optomech/error.hpp"
#include "optomech/lindblad_integrator.hpp"

namespace optomech::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string unit_label(const std::string& p) {
  if (p == "eps" || p == "n_m" || p == "n_p") return p;
  return p + "[nu0]";
}

void append_echo(std::vector<std::string>& header, const Scenario& s) {
  for (const auto& [k, v] : s.echo()) header.push_back(k);
}

void append_echo_values(std::vector<std::string>& row, const Scenario& s) {
  for (const auto& [k, v] : s.echo()) row.push_back(v);
}

// First sample time after the transient, aligned to a whole number of periods.
double settled_start(const RateSet& rs, double period) {
  if (!(rs.Gamma_cool > 0.0)) throw Error(ErrorKind::Heating, "no net cooling");
  return std::ceil(transient_time(rs) / period - 1e-9) * period;
}

std::vector<CovarianceState> settled_covariance(const Scenario& s, double e, int periods, double& t0) {
  const MechanicalDrive d = s.drive(e);
  const RateSet rs = rates(d, s.cavity(), s.coupling());
  const double T = d.period();
  t0 = settled_start(rs, T);
  auto traj = covariance_evolve(rs, d, {}, t0 + periods * T, T / s.samples_per_period);
  std::erase_if(traj, [&](const CovarianceState& c) { return c.time < t0 - 1e-9 * T; });
  return traj;
}

double covariance_mbar(const Scenario& s, double e) {
  double t0 = 0.0;
  const auto traj = settled_covariance(s, e, 1, t0);
  const std::size_t m = traj.size() - 1;
  double acc = 0.5 * (mean_m(traj.front().trace()) + mean_m(traj.back().trace()));
  for (std::size_t i = 1; i < m; ++i) acc += mean_m(traj[i].trace());
  return acc / static_cast<double>(m);
}

double analytic_mbar(const Scenario& s, double e) {
  const MechanicalDrive d = s.drive(e);
  return m_bar(rates(d, s.cavity(), s.coupling()), e, d.omega);
}

Trajectory settled_lindblad(const Scenario& s, int periods) {
  const ModelParams p = s.model();
  const double T = p.drive.period();
  const double t0 = settled_start(rates(p.drive, p.cavity, p.coupling), T);
  EvolveOptions o;
  o.sample_from = t0;
  o.transient_end = t0;
  return evolve(default_initial_state(p), p, t0 + periods * T, T / s.samples_per_period, o);
}

Table time_table(const Scenario& s, Engine e) {
  Table t;
  if (e == Engine::FullLindblad) {
    const Trajectory tr = settled_lindblad(s, s.periods);
    t.header = {"time", "m_mech", "n_cav", "trace_err"};
    t.data_columns = 2;
    append_echo(t.header, s);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      std::vector<std::string> row{csv::number(tr.times[i]), csv::number(tr.series("m_mech")[i]),
                                   csv::number(tr.series("n_cav")[i]), csv::number(tr.series("trace_err")[i])};
      append_echo_values(row, s);
      t.rows.push_back(std::move(row));
    }
    return t;
  }

  t.header = {"time[1/nu0]", "m_driven", "m_undriven"};
  t.data_columns = 2;
  append_echo(t.header, s);
  if (e == Engine::Analytic) {
    const MechanicalDrive d = s.drive(), d0 = s.drive(0.0);
    const RateSet rs = rates(d, s.cavity(), s.coupling()), rs0 = rates(d0, s.cavity(), s.coupling());
    const double T = d.period();
    const int samples = s.periods * s.samples_per_period;
    for (int i = 0; i <= samples; ++i) {
      const double time = T * i / s.samples_per_period;
      std::vector<std::string> row{csv::number(time), csv::number(mean_m(trace_analytic(rs, d.eps, d.omega, time))),
                                   csv::number(mean_m(trace_analytic(rs0, 0.0, d0.omega, time)))};
      append_echo_values(row, s);
      t.rows.push_back(std::move(row));
    }
    return t;
  }

  double t0 = 0.0;
  const auto driven = settled_covariance(s, s.eps, s.periods, t0);
  const auto undriven = settled_covariance(s, 0.0, s.periods, t0);
  for (std::size_t i = 0; i < std::min(driven.size(), undriven.size()); ++i) {
    std::vector<std::string> row{csv::number(driven[i].time), csv::number(mean_m(driven[i].trace())),
                                 csv::number(mean_m(undriven[i].trace()))};
    append_echo_values(row, s);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table sweep_table(const Scenario& s, Engine e) {
  const Sweep& sw = *s.sweep;
  Table t;
  t.header = {unit_label(sw.parameter)};
  if (e == Engine::FullLindblad) {
    t.header.insert(t.header.end(), {"m_avg", "m_bar_analytic"});
  } else if (s.table == TableKind::Mbar) {
    t.header.insert(t.header.end(), {"m_bar_pos", "m_bar_neg", "m_bar_undriven"});
  } else {
    t.header.insert(t.header.end(), {"ratio_pos", "ratio_neg"});
  }
  t.data_columns = t.header.size() - 1;
  t.header.push_back("reason");
  append_echo(t.header, s);

  std::vector<std::vector<std::string>> rows(sw.count);
  parallel_for(sw.count, [&](std::size_t i) {
    const double x = sw.value(static_cast<int>(i));
    std::vector<double> values(t.data_columns, kNaN);
    std::string reason;
    Scenario point = s;
    try {
      point = s.with(sw.parameter, x);
      if (e == Engine::FullLindblad) {
        const Trajectory tr = settled_lindblad(point, 1);
        values[0] = period_average(tr, "m_mech", point.drive().period());
        values[1] = analytic_mbar(point, point.eps);
      } else {
        const auto avg = e == Engine::Analytic ? analytic_mbar : covariance_mbar;
        const double mag = std::abs(point.eps);
        const double pos = avg(point, mag), neg = avg(point, -mag), und = avg(point, 0.0);
        if (s.table == TableKind::Mbar) values = {pos, neg, und};
        else values = {pos / und, neg / und};
      }
    } catch (const Error& err) {
      std::fill(values.begin(), values.end(), kNaN);
      reason = std::string(to_string(err.kind()));
    }
    std::vector<std::string> row{csv::number(x)};
    for (double v : values) row.push_back(csv::number(v));
    row.push_back(reason);
    append_echo_values(row, point);
    rows[i] = std::move(row);
  });
  t.rows = std::move(rows);
  return t;
}

}  // namespace

std::string Table::to_csv() const {
  std::string out = csv::join(header) + "\n";
  for (const auto& r : rows) out += csv::join(r) + "\n";
  return out;
}

Table engine_table(const Scenario& s, Engine e) { return s.sweep ? sweep_table(s, e) : time_table(s, e); }

std::vector<std::filesystem::path> run_scenario(const Scenario& s, const std::filesystem::path& out) {
  std::filesystem::create_directories(out);
  std::vector<std::filesystem::path> written;
  for (Engine e : s.engines) {
    const Table t = engine_table(s, e);
    const std::string stem = s.name + "_" + std::string(to_string(e));
    const auto csv_path = out / (stem + ".csv");
    std::ofstream(csv_path, std::ios::binary) << t.to_csv();
    written.push_back(csv_path);
    if (s.svg) {
      const auto svg_path = out / (stem + ".svg");
      std::ofstream(svg_path, std::ios::binary) << svg_plot(t, stem);
      written.push_back(svg_path);
    }
  }
  return written;
}

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("OPTOMECH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<unsigned>(v);
    else warn("OPTOMECH_THREADS ignored: expected a positive integer");
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = worker_count(jobs);
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < jobs;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(m);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace optomech::cli
