#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rdsim/field.hpp"
#include "rdsim/kernels.hpp"
#include "rdsim/models.hpp"

namespace rdsim {

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  double positivity_floor = -1e-12;
  int max_step_halvings = 20;
  std::size_t record_every = 1;
  Execution execution = Execution::parallel;

  /// Throws ContractError on an inconsistent configuration.
  void validate() const;
};

struct SystemState {
  double t = 0.0;
  std::vector<Field> species;

  const Grid1D& grid() const { return species.front().grid(); }
  /// Pointwise sum over species.
  Field total() const;
};

struct Snapshot {
  double t = 0.0;
  SystemState state;
  std::vector<double> sup_norms;
  std::vector<double> masses;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
};

/// Per-species sup norms and masses of a state.
Snapshot make_snapshot(const SystemState& state);

/// Accepted step handed to hooks: the state before and after, and the step actually taken.
struct StepEvent {
  const SystemState& before;
  const SystemState& after;
  double dt;
  std::size_t step;  // 1-based count of accepted steps
  bool recorded;     // a snapshot was stored for `after`
};

using StepHook = std::function<void(const StepEvent&)>;

/// Thomas elimination for a tridiagonal system; lower/upper have length n - 1.
/// Throws NumericalFailure on a zero pivot.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

/// One IMEX Euler step: (I - dt d_i L) u_i' = u_i + dt f_i(u, t). No positivity handling.
SystemState imex_step(const SystemState& state, const ReactionSystem& sys, double dt,
                      Execution ex = Execution::parallel);

/// Steps from initial.t to cfg.t_end. Steps producing values below the positivity floor are
/// retried with half the step; values in [floor, 0) are clamped to zero. Hooks run in order
/// after each accepted step. Throws NumericalFailure when the halvings are exhausted.
Trajectory run_simulation(const ReactionSystem& sys, const SystemState& initial,
                          const SolverConfig& cfg, std::span<const StepHook> hooks = {});

/// Throws ContractError unless the state matches the system and is nonnegative and finite.
void validate_state(const SystemState& state, const ReactionSystem& sys);

}  // namespace rdsim
