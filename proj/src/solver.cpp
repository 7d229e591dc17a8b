#include "rdsim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rdsim/errors.hpp"
#include "rdsim/grid.hpp"

namespace rdsim {

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ContractError("SolverConfig: dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw ContractError("SolverConfig: t_end must be positive");
  }
  if (dt > t_end) throw ContractError("SolverConfig: dt must not exceed t_end");
  if (!(positivity_floor <= 0.0)) throw ContractError("SolverConfig: positivity_floor must be <= 0");
  if (max_step_halvings < 0) throw ContractError("SolverConfig: max_step_halvings must be >= 0");
  if (record_every < 1) throw ContractError("SolverConfig: record_every must be >= 1");
}

Field SystemState::total() const {
  Field sum(grid());
  for (const auto& f : species) {
    for (std::size_t j = 0; j < f.size(); ++j) sum[j] += f[j];
  }
  return sum;
}

Snapshot make_snapshot(const SystemState& state) {
  Snapshot snap{state.t, state, {}, {}};
  for (const auto& f : state.species) {
    snap.sup_norms.push_back(f.sup_norm());
    snap.masses.push_back(integrate(f));
  }
  return snap;
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (rhs.size() != n || (n > 0 && (lower.size() != n - 1 || upper.size() != n - 1))) {
    throw ContractError("solve_tridiagonal: inconsistent band lengths");
  }
  std::vector<double> x(rhs.begin(), rhs.end()), scratch(n);
  if (!kernels::thomas_solve(lower, diag, upper, x, scratch)) {
    throw NumericalFailure("solve_tridiagonal: zero pivot");
  }
  return x;
}

void validate_state(const SystemState& state, const ReactionSystem& sys) {
  if (state.species.size() != sys.n_species()) {
    throw ContractError("state has " + std::to_string(state.species.size()) +
                        " species, system expects " + std::to_string(sys.n_species()));
  }
  for (std::size_t i = 0; i < state.species.size(); ++i) {
    const Field& f = state.species[i];
    require_same_grid(f, state.species.front());
    if (!f.all_finite()) throw ContractError("species " + std::to_string(i + 1) + " not finite");
    if (f.min() < 0.0) {
      throw ContractError("species " + std::to_string(i + 1) + " has negative values");
    }
  }
}

SystemState imex_step(const SystemState& state, const ReactionSystem& sys, double dt,
                      Execution ex) {
  const std::size_t n = sys.n_species();
  SystemState next{state.t + dt, state.species};
  kernels::reaction(ex, sys.reaction(), state.t, state.species, next.species);
  const double h = state.grid().spacing();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& out = next.species[i].values();
    const auto& old = state.species[i].values();
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = old[j] + dt * out[j];
    r[i] = dt * sys.diffusion()[i] / (h * h);
  }
  if (int bad = kernels::implicit_diffusion(ex, r, next.species); bad >= 0) {
    throw NumericalFailure("imex_step: implicit diffusion solve failed", state.t, bad, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!next.species[i].all_finite()) {
      throw NumericalFailure("imex_step: non-finite value", state.t + dt, static_cast<int>(i),
                             std::numeric_limits<double>::quiet_NaN());
    }
  }
  return next;
}

Trajectory run_simulation(const ReactionSystem& sys, const SystemState& initial,
                          const SolverConfig& cfg, std::span<const StepHook> hooks) {
  cfg.validate();
  validate_state(initial, sys);
  Trajectory traj;
  traj.snapshots.push_back(make_snapshot(initial));

  SystemState current = initial;
  std::size_t accepted = 0;
  // Steps closer than this to t_end are merged into the final step.
  const double t_slack = 1e-12 * cfg.t_end;
  while (current.t < cfg.t_end - t_slack) {
    double dt = std::min(cfg.dt, cfg.t_end - current.t);
    if (cfg.t_end - (current.t + dt) <= t_slack) dt = cfg.t_end - current.t;

    SystemState trial;
    for (int attempt = 0;; ++attempt) {
      trial = imex_step(current, sys, dt, cfg.execution);
      int worst_species = -1;
      double worst_value = 0.0;
      for (std::size_t i = 0; i < trial.species.size(); ++i) {
        const double m = trial.species[i].min();
        if (m < cfg.positivity_floor && m < worst_value) {
          worst_value = m;
          worst_species = static_cast<int>(i);
        }
      }
      if (worst_species < 0) break;
      if (attempt >= cfg.max_step_halvings) {
        throw NumericalFailure("run_simulation: positivity lost after " +
                                   std::to_string(cfg.max_step_halvings) + " step halvings",
                               current.t, worst_species, worst_value);
      }
      dt *= 0.5;
    }
    for (auto& f : trial.species) {
      for (double& v : f.values()) {
        if (v < 0.0) v = 0.0;
      }
    }
    if (cfg.t_end - trial.t <= t_slack) trial.t = cfg.t_end;

    ++accepted;
    const bool at_end = trial.t >= cfg.t_end;
    const bool record = at_end || accepted % cfg.record_every == 0;
    if (record) traj.snapshots.push_back(make_snapshot(trial));
    const StepEvent event{current, trial, dt, accepted, record};
    for (const auto& hook : hooks) hook(event);
    current = std::move(trial);
  }
  return traj;
}

}  // namespace rdsim
