#include "rdsim/cli.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdsim/errors.hpp"
#include "rdsim/experiment.hpp"
#include "rdsim/theory.hpp"

namespace rdsim {

namespace {

std::string fixed10(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", x);
  return buf;
}

struct RunOutcome {
  std::string path;
  int code = kExitPass;
  std::string text;
};

std::string summarize(const std::string& path, const RunConfig& cfg, const ExperimentResult& r) {
  std::ostringstream os;
  std::size_t failed = 0, counted = 0;
  for (const auto& c : r.report.checks) {
    if (c.verdict == Verdict::pass || c.verdict == Verdict::fail) ++counted;
    if (c.verdict == Verdict::fail) ++failed;
  }
  os << path << ": " << (r.report.passed() ? "pass" : "fail") << " (" << counted - failed << "/"
     << counted << " checks passed)";
  if (r.report.aborted) os << " ABORTED: " << r.report.abort_reason;
  os << "\n";
  for (const auto& c : r.report.checks) {
    if (c.verdict != Verdict::fail) continue;
    os << "  FAIL " << c.name << ": measured " << format_number(c.measured) << ", bound "
       << format_number(c.bound);
    if (!c.note.empty()) os << " [" << c.note << "]";
    os << "\n";
  }
  for (const auto& f : r.report.fits) {
    os << "  fit " << f.name << " (" << f.series << "): rate " << format_number(f.rate);
    if (!std::isnan(f.corrected_rate)) os << ", corrected " << format_number(f.corrected_rate);
    os << ", R^2 " << format_number(f.r_squared) << "\n";
  }
  os << "  wrote " << cfg.csv_path << ", " << cfg.report_path << "\n";
  return os.str();
}

RunOutcome run_one(const std::string& path, const RunConfig& cfg, RunMode mode) {
  RunOutcome o{path, kExitPass, {}};
  try {
    const ExperimentResult r = run_experiment(cfg, mode);
    emit_outputs(r, cfg);
    o.code = exit_code(r, mode);
    o.text = summarize(path, cfg, r);
  } catch (const ConfigError& e) {
    o.code = kExitConfigError;
    for (const auto& issue : e.issues()) o.text += path + ": " + issue + "\n";
  } catch (const std::exception& e) {
    o.code = kExitConfigError;
    o.text = path + ": " + e.what() + "\n";
  }
  return o;
}

int experiment_command(const std::vector<std::string>& paths, bool sweep, bool augment,
                       RunMode mode, std::ostream& out, std::ostream& err) {
  if (paths.size() > 1 && !sweep) {
    err << "several configs given; pass --sweep to run them concurrently\n";
    return kExitConfigError;
  }
  std::vector<RunConfig> configs;
  int code = kExitPass;
  for (const auto& p : paths) {
    try {
      configs.push_back(load_config(p));
      if (augment) configs.back().transform.augment = true;
    } catch (const ConfigError& e) {
      for (const auto& issue : e.issues()) err << p << ": " << issue << "\n";
      code = kExitConfigError;
    }
  }
  if (code != kExitPass) return code;

  std::set<std::string> outputs;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    for (const auto& o : {configs[k].csv_path, configs[k].report_path}) {
      if (!outputs.insert(o).second) {
        err << paths[k] << ": output path " << o << " is shared with another config\n";
        return kExitConfigError;
      }
    }
  }

  std::vector<std::future<RunOutcome>> jobs;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    jobs.push_back(std::async(std::launch::async, run_one, std::cref(paths[k]),
                              std::cref(configs[k]), mode));
  }
  for (auto& job : jobs) {
    const RunOutcome o = job.get();
    (o.code == kExitConfigError ? err : out) << o.text;
    code = std::max(code, o.code);
  }
  return code;
}

int constants_command(int n, double d, double gamma, std::optional<double> cn,
                      std::optional<double> kappan, std::ostream& out) {
  const auto c = theory::free_space_constants(n, d, gamma, cn, kappan);
  if (c.b_bounded) {
    out << "B1=" << fixed10(*c.b1) << "\n";
    out << "B2=" << fixed10(*c.b2) << "\n";
    out << "B3=" << fixed10(*c.b3) << "\n";
    out << "B_bounded=" << fixed10(*c.b_bounded) << "\n";
  }
  out << "B4=" << fixed10(c.b4) << "\n";
  out << "B5=" << fixed10(c.b5) << "\n";
  out << "B_free=" << fixed10(c.b_free) << "\n";
  out << "B=" << fixed10(c.b) << "\n";
  return kExitPass;
}

int equilibrium_command(double m13, double m23, double m24, std::ostream& out) {
  const auto eq = theory::quad_equilibrium(m13, m23, m24);
  for (std::size_t i = 0; i < 4; ++i) {
    out << "u" << i + 1 << "=" << format_number(eq.u[i]) << "\n";
  }
  return kExitPass;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

int fit_command(const std::string& csv, const std::string& column, const std::string& mode,
                double t_from, double t_to, std::ostream& out) {
  std::ifstream in(csv);
  if (!in) throw std::runtime_error(csv + ": cannot open");
  std::string line;
  if (!std::getline(in, line)) throw DataError(csv + ": empty file");
  const auto header = split_csv_line(line);
  std::size_t col = header.size();
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == column) col = k;
  }
  if (col == header.size()) throw DataError(csv + ": no column named '" + column + "'");
  std::vector<double> t, y;
  while (std::getline(in, line)) {
    const auto cells = split_csv_line(line);
    if (cells.size() <= col || cells[col].empty() || cells[0].empty()) continue;
    const double tt = std::stod(cells[0]);
    if (tt < t_from || tt > t_to) continue;
    t.push_back(tt);
    y.push_back(std::stod(cells[col]));
  }
  const auto f = theory::fit_rate(
      t, y, mode == "exp" ? theory::FitMode::exponential : theory::FitMode::polynomial);
  out << (mode == "exp" ? "rate=" : "exponent=") << format_number(f.rate) << "\n";
  out << "prefactor=" << format_number(f.prefactor) << "\n";
  out << "r_squared=" << format_number(f.r_squared) << "\n";
  out << "samples=" << t.size() << "\n";
  return kExitPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reaction-diffusion simulator with built-in verification"};
  app.require_subcommand(1);

  std::vector<std::string> run_paths, verify_paths;
  bool run_sweep = false, run_augment = false, verify_sweep = false, verify_augment = false;
  auto* run = app.add_subcommand("run", "Simulate and write the CSV and report");
  run->add_option("config", run_paths, "JSON config file(s)")->required()->check(CLI::ExistingFile);
  run->add_flag("--sweep", run_sweep, "Run several configs concurrently");
  run->add_flag("--augment", run_augment, "Simulate the augmented conservative system");

  auto* verify = app.add_subcommand("verify", "Run and fail unless every check passes");
  verify->add_option("config", verify_paths, "JSON config file(s)")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_flag("--sweep", verify_sweep, "Run several configs concurrently");
  verify->add_flag("--augment", verify_augment, "Simulate the augmented conservative system");

  int n = 1;
  double d = 1.0, gamma = 0.0;
  std::optional<double> cn, kappan;
  auto* constants = app.add_subcommand("constants", "Print the interpolation constants");
  constants->add_option("--n", n, "Space dimension")->required()->check(CLI::PositiveNumber);
  constants->add_option("--d", d, "Diffusion coefficient")->required();
  constants->add_option("--gamma", gamma, "Hoelder exponent in [0, 1)")->required();
  constants->add_option("--cn", cn, "Green-function constant c_n (bounded domain)");
  constants->add_option("--kappan", kappan, "Green-function constant kappa_n (bounded domain)");

  double m13 = 0.0, m23 = 0.0, m24 = 0.0;
  auto* equilibrium = app.add_subcommand("equilibrium", "Equilibrium of A1 + A2 <-> A3 + A4");
  equilibrium->add_option("--m13", m13, "Conserved mass of u1 + u3")->required();
  equilibrium->add_option("--m23", m23, "Conserved mass of u2 + u3")->required();
  equilibrium->add_option("--m24", m24, "Conserved mass of u2 + u4")->required();

  std::string csv, column, mode = "exp";
  double t_from = -std::numeric_limits<double>::infinity();
  double t_to = std::numeric_limits<double>::infinity();
  auto* fit = app.add_subcommand("fit", "Fit an exponential or power law to a CSV column");
  fit->add_option("--csv", csv, "Run CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--column", column, "Column name")->required();
  fit->add_option("--mode", mode, "exp or poly")->check(CLI::IsMember({"exp", "poly"}));
  fit->add_option("--from", t_from, "Window start time");
  fit->add_option("--to", t_to, "Window end time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  try {
    if (*run) return experiment_command(run_paths, run_sweep, run_augment, RunMode::run, out, err);
    if (*verify) {
      return experiment_command(verify_paths, verify_sweep, verify_augment, RunMode::verify, out,
                                err);
    }
    if (*constants) return constants_command(n, d, gamma, cn, kappan, out);
    if (*equilibrium) return equilibrium_command(m13, m23, m24, out);
    if (*fit) return fit_command(csv, column, mode, t_from, t_to, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace rdsim
