#pragma once

// Scenario files, table generation, figure presets and self-checks behind the
// command-line tool.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "optomech/cooling_analytics.hpp"
#include "optomech/driven_model.hpp"

namespace optomech::cli {

inline constexpr int kSchemaVersion = 1;

enum class Engine { Analytic, CovarianceOde, FullLindblad };
std::string_view to_string(Engine e);

enum class TableKind { Mbar, Ratio };

struct Sweep {
  std::string parameter;  // delta, eps, kappa, g_eff, gamma, n_m, n_p
  double min = 0.0;
  double max = 0.0;
  int count = 0;

  double value(int i) const { return min + (max - min) * i / (count - 1); }
};

/// Flat description of one run; all quantities in units of nu0 = 1.
struct Scenario {
  std::string name = "scenario";
  int n = 2;
  double eps = 1.0 / 18;
  double gamma = 0.0;
  double n_m = 0.0;
  double delta = -0.9469;
  double kappa = 0.25;
  double n_p = 0.0;
  std::optional<double> g_eff = 0.5;
  std::optional<double> Omega;
  std::optional<double> chi0;
  std::vector<Engine> engines{Engine::Analytic};
  std::optional<Sweep> sweep;
  TableKind table = TableKind::Mbar;
  int periods = 2;
  int samples_per_period = 64;
  ModelDims dims{12, 12};
  std::string out_dir = ".";
  bool svg = false;

  MechanicalDrive drive() const;
  MechanicalDrive drive(double eps_override) const;
  CavityConfig cavity() const;
  EffectiveCoupling coupling() const;
  ModelParams model() const;

  /// Copy with one named parameter replaced. ConfigError for unknown names.
  Scenario with(std::string_view parameter, double value) const;

  /// Every physical input as (column, value) pairs for row echoes.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// key = value lines, '#' comments. ConfigError names the offending key.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::filesystem::path& file);

/// fig1, fig2 or fig3 with the figure-caption parameters.
Scenario preset(std::string_view figure);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::size_t data_columns = 0;  // plotted columns after the first

  std::string to_csv() const;
};

/// Table for one engine. Sweep points that raise a typed error become NaN
/// with the error kind in the reason column.
Table engine_table(const Scenario& s, Engine e);

/// Writes <out>/<name>_<engine>.csv (and .svg when enabled); returns the paths.
std::vector<std::filesystem::path> run_scenario(const Scenario& s, const std::filesystem::path& out);

/// Simple line chart of the numeric columns against the first one.
std::string svg_plot(const Table& t, std::string_view title);

/// Worker count for `jobs` items: OPTOMECH_THREADS if set, else hardware
/// concurrency, never above jobs.
unsigned worker_count(std::size_t jobs);

/// Calls fn(i) for i in [0, jobs) on the worker pool.
void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& fn);

enum class VerifyLevel { Fast, Full };

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Self-checks; full adds the master-equation runs at the given cutoff and
/// the doubled-cutoff gate.
std::vector<Check> verify(VerifyLevel level, int cutoff = 12);

/// Prints one line per check; returns 0 when all pass.
int report(const std::vector<Check>& checks, std::ostream& os);

}  // namespace optomech::cli
