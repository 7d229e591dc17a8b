#pragma once

// One configured experiment: simulation with diagnostics hooks, post-hoc checks and fits,
// and the CSV/JSON outputs.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdsim/config.hpp"

namespace rdsim {

enum class Verdict { pass, fail, info, skipped };

const char* to_string(Verdict v) noexcept;

struct CheckEntry {
  std::string name;
  double measured = std::numeric_limits<double>::quiet_NaN();
  double bound = std::numeric_limits<double>::quiet_NaN();
  double tolerance = std::numeric_limits<double>::quiet_NaN();
  Verdict verdict = Verdict::info;
  std::string note;
};

struct FitEntry {
  std::string name;
  std::string series;
  std::string mode;  // "exp" or "poly"
  double t_from = 0.0, t_to = 0.0;
  std::size_t samples = 0;
  double rate = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  /// Exponential rate with the first-order step bias removed, when applicable.
  double corrected_rate = std::numeric_limits<double>::quiet_NaN();
};

struct Report {
  nlohmann::ordered_json config;
  std::string content_hash;
  std::string mode = "run";
  std::string model;
  bool augmented = false;
  bool aborted = false;
  std::string abort_reason;
  std::vector<CheckEntry> checks;
  std::vector<FitEntry> fits;

  /// Every pass/fail entry passes and the run completed.
  bool passed() const;
  const CheckEntry* find(const std::string& name) const;
  nlohmann::ordered_json to_json() const;
};

struct ExperimentResult {
  Report report;
  std::string csv;
};

enum class RunMode { run, verify };

/// Runs the configured experiment. A numerical failure of the solver does not throw: the CSV
/// holds the rows recorded so far and the report is marked aborted. In verify mode a failed
/// structure audit stops before the simulation.
ExperimentResult run_experiment(const RunConfig& cfg, RunMode mode = RunMode::run);

/// Writes cfg.csv_path and cfg.report_path, each through a temporary file and a rename.
/// Throws std::runtime_error naming the path on I/O failure.
void emit_outputs(const ExperimentResult& result, const RunConfig& cfg);

/// 0 pass, 1 check failure (verify mode only), 3 aborted run.
int exit_code(const ExperimentResult& result, RunMode mode);

/// Header row for n_species species and n_laws conservation laws, without trailing newline.
std::string csv_header(std::size_t n_species, std::size_t n_laws);

/// Shortest round-trip decimal; empty for NaN.
std::string format_number(double x);

}  // namespace rdsim
