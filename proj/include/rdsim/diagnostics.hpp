#pragma once

// Companion fields of the global-existence argument, evolved next to the solution, and the
// identities and bounds they must satisfy.
//
//   v_i   : d_t v_i - d Lap v_i = u_i,       v_i(0) = 0
//   z     : d_t z   - d Lap z   = K0(t),     z(0) = sum_i u_i(0)
//   z_hat : int_0^t z
//   u_hat : int_0^t sum_i d_i u_i
//   v_d   : sum_i (d - d_i) v_i, which must agree with d z_hat - u_hat
//   b     : sum_i u_i / sum_i d_i u_i, bounded by 1/max d_i and 1/min d_i
//
// and z - Lap v_d = sum_i u_i at every time.

#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rdsim/field.hpp"
#include "rdsim/models.hpp"
#include "rdsim/solver.hpp"

namespace rdsim {

struct AuxiliaryConfig {
  /// Mollifier diffusion, strictly above every d_i.
  double d = 0.0;
  /// Right-hand side K0(t) of the z equation.
  std::function<double(double)> source;
  /// Fault injection: shifts z(0) by this amount.
  double z_offset = 0.0;
};

/// z is driven by the exact mass rate when the system has one, otherwise by the constant K0.
/// Throws DomainError unless d > max_i d_i.
AuxiliaryConfig make_auxiliary_config(const ReactionSystem& sys, double d);

struct AuxiliaryState {
  double t = 0.0;
  std::vector<Field> v;
  Field z, z_hat, u_hat;
  Field v_d;      // sum_i (d - d_i) v_i
  Field v_d_alt;  // d z_hat - u_hat
  Field b;
};

/// Threshold on sum_i u_i below which b falls back to 1/d_1 and is not checked.
inline constexpr double kVanishingMass = 1e-12;

AuxiliaryState init_auxiliary(const SystemState& initial, const ReactionSystem& sys,
                              const AuxiliaryConfig& cfg);

/// Advances the companion fields across one accepted solver step. v_i and z take one IMEX
/// step with sources at the old time level; z_hat and u_hat use the trapezoidal rule.
AuxiliaryState evolve_auxiliary(const StepEvent& step, const AuxiliaryState& aux,
                                const ReactionSystem& sys, const AuxiliaryConfig& cfg);

/// sup_x | sum_i (d - d_i) v_i - (d z_hat - u_hat) |.
double vd_consistency_residual(const AuxiliaryState& aux);

/// sup_x | z - Lap v_d - sum_i u_i | at the current time.
double zvd_residual(const SystemState& state, const AuxiliaryState& aux);

/// Pointwise b with the 1/d_1 convention on cells where sum_i u_i <= kVanishingMass.
Field compute_b(const SystemState& state, std::span<const double> diffusion);

struct BoundCheck {
  double measured = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

/// sup|z| <= M + int_0^T K0 + 1e-6 (1 + M + int_0^T K0).
BoundCheck check_z_bound(double sup_z, double m, double k0_integral);

struct HolderProbe {
  double v_d = 0.0, z_hat = 0.0, u_hat = 0.0;
};

struct DiagnosticsReport {
  BoundCheck z_bound;
  double b_min = 0.0, b_max = 0.0;  // over cells with sum u > kVanishingMass; NaN if none
  double b_lower = 0.0, b_upper = 0.0;
  bool b_passed = true;
  double vd_consistency = 0.0;  // max over time
  double zvd_residual = 0.0;    // max over time
  double grad_vd = 0.0;         // max over time of grad_sup(v_d)
  double f_sup = 0.0;           // max over time of sup |u_d|, u_d = sum_i (d - d_i) u_i
  double u_hat_min = 0.0;       // must be >= -1e-9
  double u_hat_excess = 0.0;    // max of u_hat - d z_hat, must be <= 1e-9
  BoundCheck u_hat_bound;       // sup u_hat <= d (M + int K0) T
  std::map<double, HolderProbe> holder;  // gamma -> sup over recorded times
  double u_sup = 0.0;                    // sup over time and species of |u_i|
  double m = 0.0;                        // sum_i ||u_i(0)||_inf
  double k0_integral = 0.0;
  double horizon = 0.0;

  bool passed() const noexcept;
};

/// Per-step values emitted into the run CSV.
struct DiagnosticsRow {
  double z_sup = 0.0;
  double b_min = 0.0, b_max = 0.0;
  double vd_consistency = 0.0;
  double zvd_residual = 0.0;
  double grad_vd_sup = 0.0;
};

/// Owns the companion state of one run and accumulates the report. Use hook() as a solver
/// step hook; the tracker must outlive the run.
class AuxiliaryTracker {
 public:
  AuxiliaryTracker(const ReactionSystem& sys, const SystemState& initial, AuxiliaryConfig cfg,
                   std::vector<double> holder_gammas = {0.25, 0.5});

  void observe(const StepEvent& step);
  StepHook hook();

  const AuxiliaryState& state() const noexcept { return aux_; }
  const DiagnosticsRow& last_row() const noexcept { return row_; }
  DiagnosticsReport report() const;

 private:
  void absorb(const SystemState& state, bool recorded);

  const ReactionSystem& sys_;
  AuxiliaryConfig cfg_;
  std::vector<double> gammas_;
  AuxiliaryState aux_;
  DiagnosticsRow row_;
  DiagnosticsReport acc_;
  double source_at_t_ = 0.0;
};

/// Tracks the discrete mass-control inequality
///   m^{n+1} <= m^n + dt (K0 |Omega| + K1 m^n) + 1e-9 (1 + m^n)
/// over accepted steps, m = sum_i integrate(u_i). Systems with an exact mass rate use
/// m^n + dt |Omega| rate(t_n) as the right-hand side instead.
class MassStepMonitor {
 public:
  explicit MassStepMonitor(const ReactionSystem& sys);
  void observe(const StepEvent& step);
  StepHook hook();

  /// Largest excess over the right-hand side without slack (<= 0 when the inequality holds).
  double worst_excess() const noexcept { return worst_excess_; }
  /// Largest |m^{n+1} - rhs| / m^{n+1}.
  double worst_identity_residual() const noexcept { return worst_identity_; }
  bool passed() const noexcept { return passed_; }

 private:
  MassControl mc_;
  ReactionSystem::MassRate rate_;
  double worst_excess_ = -std::numeric_limits<double>::infinity();
  double worst_identity_ = 0.0;
  bool passed_ = true;
};

/// Total mass sum_i integrate(u_i).
double total_mass(const SystemState& state);

struct ConservationLaw {
  std::string name;
  double max_relative_drift = 0.0;
  double tolerance = 1e-8;
  bool passed = true;
};

struct MassAudit {
  std::vector<ConservationLaw> laws;  // reversible reaction only
  double envelope_excess = 0.0;       // max over snapshots of m(t) - envelope(t)
  double envelope_slack = 0.0;
  bool envelope_passed = true;

  bool passed() const noexcept;
};

/// The three conserved integrals of the reversible reaction, from per-species masses:
/// (u1 + u3), (u2 + u3), (u2 + u4). Empty for other models.
std::vector<double> conservation_laws(const ReactionSystem& sys, std::span<const double> masses);

/// Conservation-law drift (reversible reaction) and the Gronwall envelope
///   m(t) <= e^{K1 t} m0 + K0 |Omega| int_0^t e^{K1 s} ds   (slack 1e-6 (1 + m0)).
/// Systems with an exact mass rate use m0 + |Omega| int_0^t rate instead.
MassAudit conservation_and_mass(const Trajectory& traj, const ReactionSystem& sys);

/// Largest pointwise sum_i f_i log u_i over cells with all u_i > 0; NaN if there are none.
double max_entropy_dissipation(const ReactionSystem& sys, const SystemState& state);

struct InterpolationSample {
  double grad_vd = 0.0;
  double holder_vd = 0.0;  // H_delta(v_d)
  double f_sup = 0.0;      // sup |u_d|
};

struct ScalingCheck {
  double b_constant = 0.0;          // free-space B at (n = 1, d, delta), reported only
  std::vector<double> bound_terms;  // B H^{1/(2-delta)} F^{(1-delta)/(2-delta)} per run
  double slope = 0.0;               // log-log slope of grad_vd against bound_terms
  bool vacuous = false;
  bool passed = true;
};

/// Needs at least three runs. Passes when the log-log slope is at most 1.1, or vacuously
/// when every measured quantity vanishes.
ScalingCheck interpolation_scaling_check(std::span<const InterpolationSample> family,
                                         double delta, double d);

struct ForcedHeatProbe {
  double sup_u = 0.0;         // over space and time
  double oscillation = 0.0;   // sup over time of max - min
  double grad_sup = 0.0;      // over space and time
  double forcing_sup = 0.0;   // sup |phi| on the grid
};

/// Implicit Euler for d_t u - d Lap u = phi(x, t) with zero initial data.
ForcedHeatProbe forced_heat_probe(const Grid1D& grid, double d,
                                  const std::function<double(double x, double t)>& phi,
                                  double dt, double t_end);

}  // namespace rdsim
