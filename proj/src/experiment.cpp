#include "rdsim/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>

#include "rdsim/diagnostics.hpp"
#include "rdsim/errors.hpp"
#include "rdsim/grid.hpp"
#include "rdsim/solver.hpp"
#include "rdsim/theory.hpp"
#include "rdsim/transform.hpp"

namespace rdsim {

using nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Fit samples at or below this are treated as converged and dropped before taking logs.
constexpr double kFitFloor = 1e-12;
constexpr double kMinRSquared = 0.98;
constexpr double kEntropyTolerance = 1e-12;
constexpr double kMassIdentityTolerance = 1e-9;
constexpr double kAugmentedConservationTolerance = 1e-10;

CheckEntry make_check(std::string name, double measured, double bound, double tolerance,
                      bool passed, std::string note = {}) {
  return {std::move(name), measured, bound, tolerance, passed ? Verdict::pass : Verdict::fail,
          std::move(note)};
}

CheckEntry make_info(std::string name, double measured, std::string note = {}) {
  return {std::move(name), measured, kNaN, kNaN, Verdict::info, std::move(note)};
}

CheckEntry make_skipped(std::string name, std::string note) {
  return {std::move(name), kNaN, kNaN, kNaN, Verdict::skipped, std::move(note)};
}

std::string point_text(const std::vector<double>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += format_number(w[i]);
  }
  return s + ")";
}

std::string witness_note(const AssumptionCheck& c, const char* what) {
  if (c.passed) return {};
  return std::string(what) + " violated at u = " + point_text(c.witness);
}

void add_structure(Report& rep, const StructureVerdict& v, const std::string& prefix) {
  rep.checks.push_back(make_check(prefix + ".quasi_positivity", v.quasi_positive.worst, 0.0,
                                  1e-12, v.quasi_positive.passed,
                                  witness_note(v.quasi_positive, "quasi-positivity")));
  rep.checks.push_back(make_check(prefix + ".mass_control", v.mass_control.worst, 0.0, 0.0,
                                  v.mass_control.passed,
                                  witness_note(v.mass_control, "mass control")));
  rep.checks.push_back(make_check(prefix + ".growth", v.growth.worst, 1.0, 1e-12,
                                  v.growth.passed, witness_note(v.growth, "growth bound")));
}

SystemState initial_state(const RunConfig& cfg, const Grid1D& grid, double amplitude) {
  SystemState s;
  for (const auto& p : cfg.initial) {
    Field f = realize_profile(p, grid);
    for (double& v : f.values()) v *= amplitude;
    s.species.push_back(std::move(f));
  }
  return s;
}

bool uniform_decay(const RunConfig& cfg) {
  const auto* lv = std::get_if<SkewLVParams>(&cfg.model);
  if (!lv || lv->tau.empty()) return false;
  return std::all_of(lv->tau.begin(), lv->tau.end(),
                     [&](double t) { return t == lv->tau.front(); });
}

struct Series {
  std::vector<double> t, y;
  void push(double tt, double yy) {
    t.push_back(tt);
    y.push_back(yy);
  }
};

/// Fits on the window [t_from, t_to] with samples above kFitFloor. Returns nullopt and a
/// reason when too few samples survive.
std::optional<FitEntry> fit_window(const Series& s, double t_from, double t_to,
                                   theory::FitMode mode, std::string name, std::string series,
                                   std::string& reason) {
  std::vector<double> t, y;
  for (std::size_t k = 0; k < s.t.size(); ++k) {
    if (s.t[k] < t_from || s.t[k] > t_to || !(s.y[k] > kFitFloor)) continue;
    if (mode == theory::FitMode::polynomial && !(s.t[k] > 0.0)) continue;
    t.push_back(s.t[k]);
    y.push_back(s.y[k]);
  }
  if (t.size() < 4) {
    reason = "fewer than 4 samples above " + format_number(kFitFloor) + " in the window";
    return std::nullopt;
  }
  try {
    const auto fit = theory::fit_rate(t, y, mode);
    FitEntry e;
    e.name = std::move(name);
    e.series = std::move(series);
    e.mode = mode == theory::FitMode::exponential ? "exp" : "poly";
    e.t_from = t.front();
    e.t_to = t.back();
    e.samples = t.size();
    e.rate = fit.rate;
    e.prefactor = fit.prefactor;
    e.r_squared = fit.r_squared;
    return e;
  } catch (const DataError& err) {
    reason = err.what();
    return std::nullopt;
  }
}

/// Builds CSV rows from recorded states and collects the series used by the fits.
class RowRecorder {
 public:
  RowRecorder(const ReactionSystem& sys, const AuxiliaryTracker* tracker,
              std::optional<std::array<double, 4>> equilibrium, std::optional<double> k1_reconstruct,
              std::size_t n_base)
      : sys_(sys),
        tracker_(tracker),
        equilibrium_(equilibrium),
        k1_(k1_reconstruct),
        n_base_(n_base) {}

  void record(const SystemState& s) {
    const Snapshot snap = make_snapshot(s);
    const double entropy = max_entropy_dissipation(sys_, s);
    if (!std::isnan(entropy)) entropy_max_ = std::max(entropy_max_, entropy);
    double total = 0.0;
    for (double m : snap.masses) total += m;

    std::string& row = csv_;
    row += format_number(s.t);
    for (double v : snap.sup_norms) row += "," + format_number(v);
    for (double v : snap.masses) row += "," + format_number(v);
    row += "," + format_number(total);
    row += "," + format_number(entropy);
    for (double v : conservation_laws(sys_, snap.masses)) row += "," + format_number(v);
    if (tracker_) {
      const DiagnosticsRow& d = tracker_->last_row();
      for (double v : {d.z_sup, d.b_min, d.b_max, d.vd_consistency, d.zvd_residual,
                       d.grad_vd_sup}) {
        row += "," + format_number(v);
      }
    } else {
      row += ",,,,,,";
    }
    row += "\n";

    mass_.push(s.t, total);
    double sup = 0.0;
    for (std::size_t i = 0; i < n_base_; ++i) sup = std::max(sup, snap.sup_norms[i]);
    sup_.push(s.t, sup);
    if (k1_) reconstructed_.push(s.t, std::exp(*k1_ * s.t) * sup);
    if (equilibrium_) {
      double dist = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        for (double v : s.species[i].values()) {
          dist = std::max(dist, std::abs(v - (*equilibrium_)[i]));
        }
      }
      distance_.push(s.t, dist);
    }
  }

  StepHook hook() {
    return [this](const StepEvent& e) {
      if (e.recorded) record(e.after);
    };
  }

  const std::string& csv() const noexcept { return csv_; }
  double entropy_max() const noexcept { return entropy_max_; }
  const Series& mass() const noexcept { return mass_; }
  const Series& sup() const noexcept { return sup_; }
  const Series& reconstructed() const noexcept { return reconstructed_; }
  const Series& distance() const noexcept { return distance_; }

 private:
  const ReactionSystem& sys_;
  const AuxiliaryTracker* tracker_;
  std::optional<std::array<double, 4>> equilibrium_;
  std::optional<double> k1_;
  std::size_t n_base_;
  std::string csv_;
  double entropy_max_ = -std::numeric_limits<double>::infinity();
  Series mass_, sup_, reconstructed_, distance_;
};

void add_aux_checks(Report& rep, const DiagnosticsReport& d) {
  rep.checks.push_back(make_check("aux.z_bound", d.z_bound.measured, d.z_bound.bound,
                                  d.z_bound.tolerance, d.z_bound.passed,
                                  "sup|z| <= M + int_0^T K0"));
  {
    CheckEntry b = make_check("aux.b_range", d.b_min, d.b_upper, 1e-9, d.b_passed,
                              "measured = min b, bound = 1/min d_i + 1e-9; max b = " +
                                  format_number(d.b_max) + ", lower = 1/max d_i - 1e-9 = " +
                                  format_number(d.b_lower));
    if (std::isnan(d.b_min)) {
      b.verdict = Verdict::skipped;
      b.note = "no cell with sum u > 1e-12";
    }
    rep.checks.push_back(std::move(b));
  }
  rep.checks.push_back(make_check("aux.u_hat_nonnegative", d.u_hat_min, 0.0, 1e-9,
                                  d.u_hat_min >= -1e-9, "measured = min u_hat"));
  rep.checks.push_back(make_check("aux.u_hat_below_d_z_hat", d.u_hat_excess, 0.0, 1e-9,
                                  d.u_hat_excess <= 1e-9, "measured = max(u_hat - d z_hat)"));
  rep.checks.push_back(make_check("aux.u_hat_bound", d.u_hat_bound.measured, d.u_hat_bound.bound,
                                  d.u_hat_bound.tolerance, d.u_hat_bound.passed,
                                  "sup u_hat <= d (M + int K0) T"));
  rep.checks.push_back(make_info("aux.vd_consistency", d.vd_consistency,
                                 "max over time; discretisation error O(dt + h^2)"));
  rep.checks.push_back(make_info("aux.zvd_residual", d.zvd_residual,
                                 "max over time; discretisation error O(dt + h^2)"));
  rep.checks.push_back(make_info("aux.grad_vd_sup", d.grad_vd));
  rep.checks.push_back(make_info("aux.u_sup", d.u_sup));
  for (const auto& [gamma, probe] : d.holder) {
    const std::string g = format_number(gamma);
    rep.checks.push_back(make_info("aux.holder.v_d@" + g, probe.v_d));
    rep.checks.push_back(make_info("aux.holder.z_hat@" + g, probe.z_hat));
    rep.checks.push_back(make_info("aux.holder.u_hat@" + g, probe.u_hat));
  }
}

AuxiliaryConfig aux_config_for(const RunConfig& cfg, const ReactionSystem& sys) {
  double d = cfg.diagnostics.d;
  if (!(d > sys.max_diffusion())) {
    if (cfg.diagnostics.d_explicit) {
      throw ConfigError({"diagnostics.d: must be strictly greater than the largest diffusion "
                         "coefficient of the simulated system (" +
                         format_number(sys.max_diffusion()) + ")"});
    }
    d = 2.0 * sys.max_diffusion();
  }
  AuxiliaryConfig ac = make_auxiliary_config(sys, d);
  ac.z_offset = cfg.faults.z_offset;
  return ac;
}

void add_interpolation(Report& rep, const RunConfig& cfg, const ReactionSystem& sys,
                       const Grid1D& grid) {
  const auto& dg = cfg.diagnostics;
  const double delta = dg.interpolation_delta;
  std::vector<InterpolationSample> family;
  AuxiliaryConfig ac = aux_config_for(cfg, sys);
  ac.z_offset = 0.0;
  SolverConfig scfg = cfg.solver;
  for (double amplitude : dg.interpolation_family) {
    SystemState init = initial_state(cfg, grid, amplitude);
    AuxiliaryTracker tracker(sys, init, ac, {delta});
    const StepHook hooks[] = {tracker.hook()};
    run_simulation(sys, init, scfg, hooks);
    const DiagnosticsReport d = tracker.report();
    family.push_back({d.grad_vd, d.holder.at(delta).v_d, d.f_sup});
  }
  const ScalingCheck sc = interpolation_scaling_check(family, delta, ac.d);
  std::string note = "log-log slope of sup|grad v_d| against B H^{1/(2-delta)} "
                     "F^{(1-delta)/(2-delta)}; B = " +
                     format_number(sc.b_constant) + " (free space, reported only)";
  if (sc.vacuous) note += "; all measured quantities vanish";
  rep.checks.push_back(make_check("interpolation.scaling", sc.slope, 1.0, 0.1, sc.passed, note));
}

}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::info: return "info";
    case Verdict::skipped: return "skipped";
  }
  return "unknown";
}

std::string format_number(double x) {
  if (std::isnan(x)) return {};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_header(std::size_t n_species, std::size_t n_laws) {
  std::string h = "t";
  for (std::size_t i = 1; i <= n_species; ++i) h += ",sup_u_" + std::to_string(i);
  for (std::size_t i = 1; i <= n_species; ++i) h += ",mass_" + std::to_string(i);
  h += ",mass_total,entropy";
  for (std::size_t k = 1; k <= n_laws; ++k) h += ",cons_law_" + std::to_string(k);
  h += ",z_sup,b_min,b_max,vd_consistency,zvd_residual,grad_vd_sup";
  return h;
}

bool Report::passed() const {
  if (aborted) return false;
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckEntry& c) { return c.verdict == Verdict::fail; });
}

const CheckEntry* Report::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ordered_json Report::to_json() const {
  auto num = [](double x) { return std::isnan(x) ? ordered_json(nullptr) : ordered_json(x); };
  ordered_json j;
  j["config"] = config;
  j["content_hash"] = content_hash;
  j["mode"] = mode;
  j["model"] = model;
  j["augmented"] = augmented;
  j["aborted"] = aborted;
  if (aborted) j["abort_reason"] = abort_reason;
  j["checks"] = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json e;
    e["name"] = c.name;
    e["measured"] = num(c.measured);
    e["bound"] = num(c.bound);
    e["tolerance"] = num(c.tolerance);
    e["verdict"] = to_string(c.verdict);
    if (!c.note.empty()) e["note"] = c.note;
    j["checks"].push_back(std::move(e));
  }
  j["fits"] = ordered_json::array();
  for (const auto& f : fits) {
    ordered_json e;
    e["name"] = f.name;
    e["series"] = f.series;
    e["mode"] = f.mode;
    e["t_from"] = f.t_from;
    e["t_to"] = f.t_to;
    e["samples"] = f.samples;
    e["rate"] = num(f.rate);
    e["prefactor"] = num(f.prefactor);
    e["r_squared"] = num(f.r_squared);
    if (!std::isnan(f.corrected_rate)) e["corrected_rate"] = f.corrected_rate;
    j["fits"].push_back(std::move(e));
  }
  j["verdict"] = passed() ? "pass" : "fail";
  return j;
}

ExperimentResult run_experiment(const RunConfig& cfg, RunMode mode) {
  ExperimentResult out;
  Report& rep = out.report;
  rep.config = cfg.echo;
  rep.content_hash = cfg.content_hash;
  rep.mode = mode == RunMode::verify ? "verify" : "run";
  rep.model = cfg.model_type;
  rep.augmented = cfg.transform.augment;
  const auto& dg = cfg.diagnostics;
  const bool diag = dg.enabled;

  const ReactionSystem base = instantiate_model(cfg.model, cfg.diffusion);
  const Grid1D grid(cfg.n_cells, cfg.length);
  const SystemState base_initial = initial_state(cfg, grid, 1.0);

  std::optional<StructureVerdict> structure;
  if (diag && dg.check_structure) {
    structure = check_structure(base, cfg.seed, dg.structure_samples);
    add_structure(rep, *structure, "structure");
  }

  std::optional<AugmentedSystem> aug;
  if (cfg.transform.augment) {
    aug = augment_system(base, cfg.faults.augmentation_offset);
    const AugmentedVerdict av =
        verify_augmented(*aug, cfg.seed + 1, cfg.transform.samples, cfg.transform.horizon);
    rep.checks.push_back(make_check("transform.conservation", av.conservation_residual,
                                    kAugmentedConservationTolerance, 0.0, av.conservation_passed,
                                    "max relative |sum g_i - K0 e^{-K1 t}|"));
    rep.checks.push_back(make_check("transform.quasi_positivity",
                                    av.structure.quasi_positive.worst, 0.0, 1e-12,
                                    av.structure.quasi_positive.passed,
                                    witness_note(av.structure.quasi_positive, "quasi-positivity")));
    rep.checks.push_back(make_check(
        "transform.growth", av.fitted_growth_constant, kNaN, kNaN, av.structure.growth.passed,
        "fitted C in |g_i| <= C e^{(1+eps)|K1|T} (1 + |w|^{2+eps}); passes when finite"));
    if (structure && structure->mass_control.passed) {
      rep.checks.push_back(make_check("transform.extra_rate", av.min_extra_rate, 0.0, 1e-10,
                                      av.min_extra_rate >= -1e-10, "min g_{N+1}"));
    } else {
      rep.checks.push_back(make_info("transform.extra_rate", av.min_extra_rate,
                                     "min g_{N+1}; not asserted without a passing mass-control "
                                     "audit of the base system"));
    }
  }

  const ReactionSystem& sys = aug ? aug->augmented : base;
  const SystemState initial = aug ? augment_state(base_initial) : base_initial;
  const std::size_t n_laws = conservation_laws(sys, make_snapshot(initial).masses).size();
  out.csv = csv_header(sys.n_species(), n_laws) + "\n";

  if (mode == RunMode::verify && structure && !structure->passed()) {
    rep.checks.push_back(make_skipped(
        "simulation", "structure audit failed; the model is outside the admissible class"));
    return out;
  }

  std::optional<AuxiliaryTracker> tracker;
  if (diag && dg.check_auxiliary) {
    tracker.emplace(sys, initial, aux_config_for(cfg, sys), dg.holder_gammas);
  }
  MassStepMonitor monitor(sys);

  std::optional<std::array<double, 4>> equilibrium;
  std::string equilibrium_note;
  const bool reversible = sys.kind() == ModelKind::quadratic_reversible;
  if (reversible) {
    const Snapshot s0 = make_snapshot(initial);
    const double area = grid.length();
    try {
      const auto eq = theory::quad_equilibrium((s0.masses[0] + s0.masses[2]) / area,
                                               (s0.masses[1] + s0.masses[2]) / area,
                                               (s0.masses[1] + s0.masses[3]) / area);
      equilibrium = eq.u;
    } catch (const DomainError& e) {
      equilibrium_note = e.what();
    }
  }
  const MassControl mc = base.mass_control();
  std::optional<double> reconstruct_k1;
  if (aug) reconstruct_k1 = aug->k1;

  RowRecorder recorder(sys, tracker ? &*tracker : nullptr, equilibrium, reconstruct_k1,
                       base.n_species());
  recorder.record(initial);

  std::vector<StepHook> hooks;
  if (tracker) hooks.push_back(tracker->hook());
  hooks.push_back(monitor.hook());
  hooks.push_back(recorder.hook());

  Trajectory traj;
  try {
    traj = run_simulation(sys, initial, cfg.solver, hooks);
  } catch (const NumericalFailure& e) {
    out.csv += recorder.csv();
    rep.aborted = true;
    rep.abort_reason = std::string(e.what()) + " at t = " + format_number(e.time()) +
                       ", species " + std::to_string(e.species() + 1) + ", value " +
                       format_number(e.value());
    return out;
  }
  out.csv += recorder.csv();

  if (diag && dg.check_mass) {
    const double m0 = total_mass(initial);
    rep.checks.push_back(make_check("mass.step_inequality", monitor.worst_excess(), 0.0,
                                    1e-9 * (1.0 + m0), monitor.passed(),
                                    "max of m^{n+1} - m^n - dt (mass source)"));
    if (sys.exact_mass_rate() || uniform_decay(cfg)) {
      const double r = monitor.worst_identity_residual();
      rep.checks.push_back(make_check("mass.step_identity", r, kMassIdentityTolerance, 0.0,
                                      r <= kMassIdentityTolerance,
                                      "max relative |m^{n+1} - m^n - dt (mass source)|"));
    }
    const MassAudit audit = conservation_and_mass(traj, sys);
    rep.checks.push_back(make_check("mass.envelope", audit.envelope_excess, 0.0,
                                    audit.envelope_slack, audit.envelope_passed,
                                    "max of m(t) minus the Gronwall envelope"));
    for (std::size_t k = 0; k < audit.laws.size(); ++k) {
      const auto& law = audit.laws[k];
      rep.checks.push_back(make_check("conservation." + law.name, law.max_relative_drift,
                                      law.tolerance, 0.0, law.passed,
                                      "cons_law_" + std::to_string(k + 1)));
    }
  }

  if (diag && dg.check_entropy) {
    const double e = recorder.entropy_max();
    if (!std::isfinite(e)) {
      rep.checks.push_back(make_skipped("entropy.dissipation", "no strictly positive cell"));
    } else if (reversible) {
      rep.checks.push_back(make_check("entropy.dissipation", e, 0.0, kEntropyTolerance,
                                      e <= kEntropyTolerance,
                                      "max over recorded states of sum_i f_i log u_i"));
    } else {
      rep.checks.push_back(make_info("entropy.dissipation", e,
                                     "max over recorded states of sum_i f_i log u_i"));
    }
  }

  if (tracker) add_aux_checks(rep, tracker->report());

  if (diag && dg.check_rates) {
    const double t_end = cfg.solver.t_end;
    const double tail = t_end / 4.0;
    std::string reason;
    if (reversible) {
      if (!equilibrium) {
        rep.checks.push_back(make_skipped("rates.equilibration", equilibrium_note));
      } else if (auto fit = fit_window(recorder.distance(), tail, t_end,
                                       theory::FitMode::exponential, "equilibration",
                                       "sup|u - u_inf|", reason)) {
        const bool ok = fit->rate > 0.0 && fit->r_squared >= kMinRSquared;
        rep.checks.push_back(make_check("rates.equilibration", fit->rate, 0.0, 0.0, ok,
                                        "needs mu > 0 and R^2 >= 0.98; R^2 = " +
                                            format_number(fit->r_squared)));
        rep.fits.push_back(std::move(*fit));
      } else {
        rep.checks.push_back(make_skipped("rates.equilibration", reason));
      }
    }
    if (mc.k0 == 0.0 && mc.k1 < 0.0) {
      const Series& s = aug ? recorder.reconstructed() : recorder.mass();
      const std::string series = aug ? "e^{K1 t} max_i sup|w_i|" : "mass_total";
      if (auto fit = fit_window(s, 0.0, t_end, theory::FitMode::exponential, "decay", series,
                                reason)) {
        const double dt = cfg.solver.dt;
        if (!aug && dt < 1.0) fit->corrected_rate = fit->rate * dt / -std::log1p(-dt);
        const double mu = std::isnan(fit->corrected_rate) ? fit->rate : fit->corrected_rate;
        const bool ok = mu > 0.0 && fit->r_squared >= kMinRSquared;
        rep.checks.push_back(make_check("rates.decay", mu, 0.0, 0.0, ok,
                                        "needs mu > 0 and R^2 >= 0.98; -K1 = " +
                                            format_number(-mc.k1)));
        rep.fits.push_back(std::move(*fit));
      } else {
        rep.checks.push_back(make_skipped("rates.decay", reason));
      }
    }
    if (mc.k1 == 0.0 && mc.k0 > 0.0) {
      if (auto fit = fit_window(recorder.sup(), tail, t_end, theory::FitMode::polynomial,
                                "growth", "max_i sup|u_i|", reason)) {
        rep.checks.push_back(make_info("rates.growth_exponent", fit->rate,
                                       "fitted xi in sup|u| ~ A t^xi"));
        rep.fits.push_back(std::move(*fit));
      } else {
        rep.checks.push_back(make_skipped("rates.growth_exponent", reason));
      }
    }
  }

  if (diag && !dg.interpolation_family.empty()) add_interpolation(rep, cfg, sys, grid);
  return out;
}

namespace {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error(tmp.string() + ": cannot open for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) throw std::runtime_error(tmp.string() + ": write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error(path.string() + ": rename failed: " + ec.message());
}

}  // namespace

void emit_outputs(const ExperimentResult& result, const RunConfig& cfg) {
  write_atomic(cfg.csv_path, result.csv);
  write_atomic(cfg.report_path, result.report.to_json().dump(2) + "\n");
}

int exit_code(const ExperimentResult& result, RunMode mode) {
  if (result.report.aborted) return 3;
  if (mode == RunMode::verify && !result.report.passed()) return 1;
  return 0;
}

}  // namespace rdsim
