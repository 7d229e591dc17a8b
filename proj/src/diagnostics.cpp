#include "rdsim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rdsim/errors.hpp"
#include "rdsim/grid.hpp"
#include "rdsim/theory.hpp"

namespace rdsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sup_abs_diff(const Field& a, const Field& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s = std::max(s, std::abs(a[j] - b[j]));
  return s;
}

void refresh_vd(AuxiliaryState& aux, std::span<const double> diffusion, double d) {
  std::fill(aux.v_d.values().begin(), aux.v_d.values().end(), 0.0);
  for (std::size_t i = 0; i < aux.v.size(); ++i) {
    const double w = d - diffusion[i];
    for (std::size_t j = 0; j < aux.v_d.size(); ++j) aux.v_d[j] += w * aux.v[i][j];
  }
  for (std::size_t j = 0; j < aux.v_d.size(); ++j) {
    aux.v_d_alt[j] = d * aux.z_hat[j] - aux.u_hat[j];
  }
}

double weighted_sum_at(const SystemState& s, std::span<const double> w, std::size_t j) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.species.size(); ++i) acc += w[i] * s.species[i][j];
  return acc;
}

}  // namespace

AuxiliaryConfig make_auxiliary_config(const ReactionSystem& sys, double d) {
  if (!(d > sys.max_diffusion())) {
    throw DomainError("auxiliary diffusion d must exceed max d_i = " +
                      std::to_string(sys.max_diffusion()));
  }
  AuxiliaryConfig cfg;
  cfg.d = d;
  if (sys.exact_mass_rate()) {
    cfg.source = sys.exact_mass_rate();
  } else {
    cfg.source = [k0 = sys.mass_control().k0](double) { return k0; };
  }
  return cfg;
}

Field compute_b(const SystemState& state, std::span<const double> diffusion) {
  Field b(state.grid());
  for (std::size_t j = 0; j < b.size(); ++j) {
    double mass = 0.0, weighted = 0.0;
    for (std::size_t i = 0; i < state.species.size(); ++i) {
      mass += state.species[i][j];
      weighted += diffusion[i] * state.species[i][j];
    }
    b[j] = mass > kVanishingMass ? mass / weighted : 1.0 / diffusion[0];
  }
  return b;
}

AuxiliaryState init_auxiliary(const SystemState& initial, const ReactionSystem& sys,
                              const AuxiliaryConfig& cfg) {
  if (!(cfg.d > sys.max_diffusion())) throw DomainError("auxiliary d must exceed max d_i");
  if (!cfg.source) throw ContractError("AuxiliaryConfig: missing source");
  const Grid1D& grid = initial.grid();
  AuxiliaryState aux{initial.t,
                     std::vector<Field>(sys.n_species(), Field(grid)),
                     initial.total(),
                     Field(grid),
                     Field(grid),
                     Field(grid),
                     Field(grid),
                     compute_b(initial, sys.diffusion())};
  for (double& v : aux.z.values()) v += cfg.z_offset;
  return aux;
}

AuxiliaryState evolve_auxiliary(const StepEvent& step, const AuxiliaryState& aux,
                                const ReactionSystem& sys, const AuxiliaryConfig& cfg) {
  const SystemState& old_u = step.before;
  const SystemState& new_u = step.after;
  const double dt = step.dt;
  const double h = old_u.grid().spacing();
  const std::size_t n = sys.n_species();
  const auto& di = sys.diffusion();

  AuxiliaryState next = aux;
  next.t = new_u.t;

  // v_1..v_N and z share the operator (I - dt d L); solve them as one batch.
  std::vector<Field> batch;
  batch.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    Field rhs = aux.v[i];
    for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] += dt * old_u.species[i][j];
    batch.push_back(std::move(rhs));
  }
  Field z_rhs = aux.z;
  const double k0 = cfg.source(old_u.t);
  for (double& v : z_rhs.values()) v += dt * k0;
  batch.push_back(std::move(z_rhs));

  const std::vector<double> r(n + 1, dt * cfg.d / (h * h));
  if (kernels::implicit_diffusion(Execution::parallel, r, batch) >= 0) {
    throw NumericalFailure("evolve_auxiliary: implicit solve failed", old_u.t);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : batch[i].values()) v = std::max(v, 0.0);
    next.v[i] = std::move(batch[i]);
  }
  next.z = std::move(batch[n]);

  for (std::size_t j = 0; j < next.z.size(); ++j) {
    next.z_hat[j] = aux.z_hat[j] + 0.5 * dt * (aux.z[j] + next.z[j]);
    next.u_hat[j] =
        aux.u_hat[j] + 0.5 * dt * (weighted_sum_at(old_u, di, j) + weighted_sum_at(new_u, di, j));
  }
  refresh_vd(next, di, cfg.d);
  next.b = compute_b(new_u, di);
  return next;
}

double vd_consistency_residual(const AuxiliaryState& aux) {
  return sup_abs_diff(aux.v_d, aux.v_d_alt);
}

double zvd_residual(const SystemState& state, const AuxiliaryState& aux) {
  const Field lap = apply_laplacian(aux.v_d);
  const Field mass = state.total();
  double s = 0.0;
  for (std::size_t j = 0; j < lap.size(); ++j) {
    s = std::max(s, std::abs(aux.z[j] - lap[j] - mass[j]));
  }
  return s;
}

BoundCheck check_z_bound(double sup_z, double m, double k0_integral) {
  BoundCheck c;
  c.measured = sup_z;
  c.bound = m + k0_integral;
  c.tolerance = 1e-6 * (1.0 + std::abs(c.bound));
  c.passed = c.measured <= c.bound + c.tolerance;
  return c;
}

bool DiagnosticsReport::passed() const noexcept {
  return z_bound.passed && b_passed && u_hat_min >= -1e-9 && u_hat_excess <= 1e-9 &&
         u_hat_bound.passed;
}

AuxiliaryTracker::AuxiliaryTracker(const ReactionSystem& sys, const SystemState& initial,
                                   AuxiliaryConfig cfg, std::vector<double> holder_gammas)
    : sys_(sys),
      cfg_(std::move(cfg)),
      gammas_(std::move(holder_gammas)),
      aux_(init_auxiliary(initial, sys, cfg_)) {
  for (double g : gammas_) {
    if (!(g >= 0.0 && g < 1.0)) throw DomainError("holder gamma must lie in [0, 1)");
  }
  acc_.b_min = kNaN;
  acc_.b_max = kNaN;
  acc_.b_lower = 1.0 / sys.max_diffusion() - 1e-9;
  acc_.b_upper = 1.0 / sys.min_diffusion() + 1e-9;
  acc_.u_hat_min = 0.0;
  acc_.u_hat_excess = -std::numeric_limits<double>::infinity();
  for (const auto& f : initial.species) acc_.m += f.sup_norm();
  acc_.horizon = initial.t;
  source_at_t_ = cfg_.source(initial.t);
  absorb(initial, true);
}

void AuxiliaryTracker::absorb(const SystemState& state, bool recorded) {
  const auto& di = sys_.diffusion();
  row_.z_sup = aux_.z.sup_norm();
  row_.b_min = kNaN;
  row_.b_max = kNaN;
  const Field mass = state.total();
  for (std::size_t j = 0; j < mass.size(); ++j) {
    if (mass[j] > kVanishingMass) {
      const double b = aux_.b[j];
      row_.b_min = std::isnan(row_.b_min) ? b : std::min(row_.b_min, b);
      row_.b_max = std::isnan(row_.b_max) ? b : std::max(row_.b_max, b);
    }
  }
  row_.vd_consistency = vd_consistency_residual(aux_);
  row_.zvd_residual = zvd_residual(state, aux_);
  row_.grad_vd_sup = grad_sup(aux_.v_d);

  acc_.z_bound.measured = std::max(acc_.z_bound.measured, row_.z_sup);
  if (!std::isnan(row_.b_min)) {
    acc_.b_min = std::isnan(acc_.b_min) ? row_.b_min : std::min(acc_.b_min, row_.b_min);
    acc_.b_max = std::isnan(acc_.b_max) ? row_.b_max : std::max(acc_.b_max, row_.b_max);
  }
  acc_.vd_consistency = std::max(acc_.vd_consistency, row_.vd_consistency);
  acc_.zvd_residual = std::max(acc_.zvd_residual, row_.zvd_residual);
  acc_.grad_vd = std::max(acc_.grad_vd, row_.grad_vd_sup);
  for (std::size_t j = 0; j < mass.size(); ++j) {
    acc_.u_hat_min = std::min(acc_.u_hat_min, aux_.u_hat[j]);
    acc_.u_hat_excess = std::max(acc_.u_hat_excess, aux_.u_hat[j] - cfg_.d * aux_.z_hat[j]);
    acc_.u_hat_bound.measured = std::max(acc_.u_hat_bound.measured, std::abs(aux_.u_hat[j]));
    double ud = 0.0;
    for (std::size_t i = 0; i < di.size(); ++i) ud += (cfg_.d - di[i]) * state.species[i][j];
    acc_.f_sup = std::max(acc_.f_sup, std::abs(ud));
  }
  for (const auto& f : state.species) acc_.u_sup = std::max(acc_.u_sup, f.sup_norm());
  if (recorded) {
    for (double g : gammas_) {
      HolderProbe& p = acc_.holder[g];
      p.v_d = std::max(p.v_d, holder_modulus(aux_.v_d, g));
      p.z_hat = std::max(p.z_hat, holder_modulus(aux_.z_hat, g));
      p.u_hat = std::max(p.u_hat, holder_modulus(aux_.u_hat, g));
    }
  }
}

void AuxiliaryTracker::observe(const StepEvent& step) {
  aux_ = evolve_auxiliary(step, aux_, sys_, cfg_);
  const double next_source = cfg_.source(step.after.t);
  acc_.k0_integral += 0.5 * step.dt * (source_at_t_ + next_source);
  source_at_t_ = next_source;
  acc_.horizon = step.after.t;
  absorb(step.after, step.recorded);
}

StepHook AuxiliaryTracker::hook() {
  return [this](const StepEvent& e) { observe(e); };
}

DiagnosticsReport AuxiliaryTracker::report() const {
  DiagnosticsReport r = acc_;
  r.z_bound = check_z_bound(acc_.z_bound.measured, acc_.m, acc_.k0_integral);
  r.b_passed = std::isnan(r.b_min) || (r.b_min >= r.b_lower && r.b_max <= r.b_upper);
  r.u_hat_bound.bound = cfg_.d * (acc_.m + acc_.k0_integral) * acc_.horizon;
  r.u_hat_bound.tolerance = 1e-9 * (1.0 + r.u_hat_bound.bound);
  r.u_hat_bound.passed = r.u_hat_bound.measured <= r.u_hat_bound.bound + r.u_hat_bound.tolerance;
  if (!std::isfinite(r.u_hat_excess)) r.u_hat_excess = 0.0;
  return r;
}

double total_mass(const SystemState& state) {
  double m = 0.0;
  for (const auto& f : state.species) m += integrate(f);
  return m;
}

MassStepMonitor::MassStepMonitor(const ReactionSystem& sys)
    : mc_(sys.mass_control()), rate_(sys.exact_mass_rate()) {}

void MassStepMonitor::observe(const StepEvent& step) {
  const double area = step.before.grid().length();
  const double m0 = total_mass(step.before);
  const double m1 = total_mass(step.after);
  const double growth =
      rate_ ? area * rate_(step.before.t) : mc_.k0 * area + mc_.k1 * m0;
  const double excess = m1 - (m0 + step.dt * growth);
  worst_excess_ = std::max(worst_excess_, excess);
  if (m1 > 0.0) worst_identity_ = std::max(worst_identity_, std::abs(excess) / m1);
  if (excess > 1e-9 * (1.0 + m0)) passed_ = false;
}

StepHook MassStepMonitor::hook() {
  return [this](const StepEvent& e) { observe(e); };
}

std::vector<double> conservation_laws(const ReactionSystem& sys,
                                      std::span<const double> masses) {
  if (sys.kind() != ModelKind::quadratic_reversible) return {};
  return {masses[0] + masses[2], masses[1] + masses[2], masses[1] + masses[3]};
}

bool MassAudit::passed() const noexcept {
  return envelope_passed &&
         std::all_of(laws.begin(), laws.end(), [](const auto& l) { return l.passed; });
}

MassAudit conservation_and_mass(const Trajectory& traj, const ReactionSystem& sys) {
  if (traj.snapshots.empty()) throw ContractError("conservation_and_mass: empty trajectory");
  MassAudit audit;
  const auto& first = traj.snapshots.front();
  const auto initial_laws = conservation_laws(sys, first.masses);
  static const char* kNames[] = {"u1+u3", "u2+u3", "u2+u4"};
  for (std::size_t k = 0; k < initial_laws.size(); ++k) {
    audit.laws.push_back({kNames[k], 0.0, 1e-8, true});
  }
  double m0 = 0.0;
  for (double m : first.masses) m0 += m;
  const auto [k0, k1] = sys.mass_control();
  const double area = first.state.grid().length();
  audit.envelope_slack = 1e-6 * (1.0 + m0);
  audit.envelope_excess = -std::numeric_limits<double>::infinity();
  const auto& rate = sys.exact_mass_rate();
  double rate_integral = 0.0;  // int_{t0}^{t} rate, Simpson on each snapshot interval
  double prev_t = first.t;
  for (const auto& snap : traj.snapshots) {
    if (rate && snap.t > prev_t) {
      constexpr int kPanels = 16;
      const double step = (snap.t - prev_t) / kPanels;
      double acc = rate(prev_t) + rate(snap.t);
      for (int k = 1; k < kPanels; ++k) acc += (k % 2 ? 4.0 : 2.0) * rate(prev_t + k * step);
      rate_integral += acc * step / 3.0;
    }
    prev_t = snap.t;
    const auto laws = conservation_laws(sys, snap.masses);
    for (std::size_t k = 0; k < laws.size(); ++k) {
      const double scale = std::max(std::abs(initial_laws[k]), 1e-300);
      const double drift = std::abs(laws[k] - initial_laws[k]) / scale;
      audit.laws[k].max_relative_drift = std::max(audit.laws[k].max_relative_drift, drift);
    }
    double m = 0.0;
    for (double v : snap.masses) m += v;
    const double t = snap.t - first.t;
    const double integral = k1 == 0.0 ? t : std::expm1(k1 * t) / k1;
    const double envelope =
        rate ? m0 + area * rate_integral : std::exp(k1 * t) * m0 + k0 * area * integral;
    audit.envelope_excess = std::max(audit.envelope_excess, m - envelope);
  }
  for (auto& law : audit.laws) law.passed = law.max_relative_drift <= law.tolerance;
  audit.envelope_passed = audit.envelope_excess <= audit.envelope_slack;
  return audit;
}

double max_entropy_dissipation(const ReactionSystem& sys, const SystemState& state) {
  const std::size_t n = sys.n_species();
  std::vector<double> u(n);
  double best = kNaN;
  for (std::size_t j = 0; j < state.grid().n_cells(); ++j) {
    bool positive = true;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = state.species[i][j];
      positive = positive && u[i] > 0.0;
    }
    if (!positive) continue;
    const double e = entropy_dissipation(sys, u, state.t);
    best = std::isnan(best) ? e : std::max(best, e);
  }
  return best;
}

ScalingCheck interpolation_scaling_check(std::span<const InterpolationSample> family,
                                         double delta, double d) {
  if (family.size() < 3) {
    throw ConfigError({"interpolation family needs at least 3 runs, got " +
                       std::to_string(family.size())});
  }
  ScalingCheck check;
  check.b_constant = theory::free_space_constants(1, d, delta).b_free;
  const double p = 1.0 / (2.0 - delta);
  const double q = (1.0 - delta) / (2.0 - delta);
  std::vector<double> xs, ys;
  for (const auto& s : family) {
    const double term = check.b_constant * std::pow(s.holder_vd, p) * std::pow(s.f_sup, q);
    check.bound_terms.push_back(term);
    if (term > 0.0 && s.grad_vd > 0.0) {
      xs.push_back(std::log(term));
      ys.push_back(std::log(s.grad_vd));
    }
  }
  if (xs.size() < 2) {
    check.vacuous = true;
    check.passed = true;
    return check;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= xs.size();
  my /= xs.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  if (sxx <= 0.0) {
    check.vacuous = true;
    return check;
  }
  check.slope = sxy / sxx;
  check.passed = check.slope <= 1.0 + 0.1;
  return check;
}

ForcedHeatProbe forced_heat_probe(const Grid1D& grid, double d,
                                  const std::function<double(double, double)>& phi, double dt,
                                  double t_end) {
  if (!(d > 0.0 && dt > 0.0 && t_end >= dt)) {
    throw DomainError("forced_heat_probe: need d > 0 and 0 < dt <= t_end");
  }
  const std::vector<double> x = grid.centers();
  const double h = grid.spacing();
  const double r = dt * d / (h * h);
  ForcedHeatProbe probe;
  std::vector<Field> u(1, Field(grid));
  const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double f = phi(x[j], t);
      probe.forcing_sup = std::max(probe.forcing_sup, std::abs(f));
      u[0][j] += dt * f;
    }
    if (kernels::implicit_diffusion(Execution::parallel, std::span(&r, 1), u) >= 0) {
      throw NumericalFailure("forced_heat_probe: implicit solve failed", t);
    }
    probe.sup_u = std::max(probe.sup_u, u[0].sup_norm());
    probe.oscillation = std::max(probe.oscillation, u[0].max() - u[0].min());
    probe.grad_sup = std::max(probe.grad_sup, grad_sup(u[0]));
  }
  return probe;
}

}  // namespace rdsim
