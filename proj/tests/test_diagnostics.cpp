#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rdsim/diagnostics.hpp"
#include "rdsim/errors.hpp"
#include "rdsim/grid.hpp"
#include "rdsim/theory.hpp"

using namespace rdsim;

namespace {

// Single species with f = c0 (a constant source, possibly zero).
ReactionSystem constant_source(double c0, double d1 = 1.0) {
  CustomPolynomialParams s;
  s.n_species = 1;
  s.terms = {{{c0, {0}}}};
  s.mass_control = {c0, 0.0};
  s.growth = {std::max(c0, 1.0), 0.0};
  s.conservative = true;
  return instantiate_model(s, {d1});
}

SystemState constant_state(const Grid1D& g, std::vector<double> values) {
  SystemState s;
  for (double v : values) s.species.emplace_back(g, v);
  return s;
}

// Neumann-compatible data: cosine modes are eigenfunctions of the discrete Laplacian.
SystemState cosine_state(const Grid1D& g) {
  SystemState s;
  for (int k : {1, 2, 3, 1}) {
    Field f(g);
    for (std::size_t j = 0; j < g.n_cells(); ++j) {
      f[j] = 1.0 + 0.5 * std::cos(k * std::numbers::pi * g.center(j) / g.length());
    }
    s.species.push_back(std::move(f));
  }
  return s;
}

SystemState bump_state(const Grid1D& g, double width = 0.1) {
  SystemState s;
  for (double c : {0.3, 0.7, 0.5, 0.1}) {
    Field f(g);
    for (std::size_t j = 0; j < g.n_cells(); ++j) {
      const double x = (g.center(j) - c) / width;
      f[j] = 0.5 + std::exp(-x * x);
    }
    s.species.push_back(std::move(f));
  }
  return s;
}

struct TrackedRun {
  DiagnosticsReport report;
  AuxiliaryState aux;
  SystemState last;
};

TrackedRun tracked(const ReactionSystem& sys, const SystemState& init, double d, double dt,
                   double t_end, double z_offset = 0.0) {
  AuxiliaryConfig ac = make_auxiliary_config(sys, d);
  ac.z_offset = z_offset;
  AuxiliaryTracker tracker(sys, init, ac);
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  const StepHook hooks[] = {tracker.hook()};
  const auto traj = run_simulation(sys, init, cfg, hooks);
  return {tracker.report(), tracker.state(), traj.snapshots.back().state};
}

}  // namespace

TEST_CASE("auxiliary config requires d above every d_i") {
  const ReactionSystem sys = instantiate_model(QuadraticReversibleParams{}, {1.0, 0.5, 0.25, 2.0});
  CHECK_THROWS_AS(make_auxiliary_config(sys, 2.0), DomainError);
  const auto ac = make_auxiliary_config(sys, 2.5);
  CHECK(ac.d == 2.5);
  CHECK(ac.source(1.0) == 0.0);
}

TEST_CASE("homogeneous single species: v = c t, z = c, z - Lap v_d = sum u") {
  const Grid1D g(10, 1.0);
  const ReactionSystem sys = constant_source(0.0, 0.5);
  const double c = 3.0, d = 2.0;
  const auto run = tracked(sys, constant_state(g, {c}), d, 0.01, 0.5);
  for (std::size_t j = 0; j < g.n_cells(); ++j) {
    CHECK(run.aux.v[0][j] == doctest::Approx(c * 0.5).epsilon(1e-12));
    CHECK(run.aux.z[j] == doctest::Approx(c).epsilon(1e-12));
    CHECK(run.aux.v_d[j] == doctest::Approx((d - 0.5) * c * 0.5).epsilon(1e-12));
  }
  CHECK(vd_consistency_residual(run.aux) <= 1e-12);
  CHECK(zvd_residual(run.last, run.aux) <= 1e-12);
  CHECK(run.report.passed());
}

TEST_CASE("z with a constant source grows linearly") {
  // z(t) = 3 + 2 t for K0 = 2 and sum u0 = 3.
  const Grid1D g(8, 1.0);
  const ReactionSystem sys = constant_source(2.0);
  const auto run = tracked(sys, constant_state(g, {3.0}), 2.0, 0.01, 1.0);
  for (double v : run.aux.z.values()) CHECK(v == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(run.report.z_bound.measured == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(run.report.z_bound.bound == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(run.report.z_bound.passed);
  CHECK(zvd_residual(run.last, run.aux) <= 1e-10);
}

TEST_CASE("equilibrium reversible run keeps z constant") {
  const Grid1D g(16, 1.0);
  const ReactionSystem sys = instantiate_model(QuadraticReversibleParams{}, {1.0, 0.5, 0.25, 2.0});
  const auto run = tracked(sys, constant_state(g, {1.0, 1.0, 1.0, 1.0}), 4.0, 0.01, 1.0);
  for (double v : run.aux.z.values()) CHECK(v == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(run.report.z_bound.measured == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(run.report.zvd_residual <= 1e-10);
  CHECK(run.report.passed());
}

TEST_CASE("z bound check and its falsification") {
  const auto ok = check_z_bound(4.0, 4.0, 0.0);
  CHECK(ok.passed);
  CHECK(ok.bound == 4.0);
  CHECK(check_z_bound(5.0, 3.0, 2.0).passed);
  CHECK_FALSE(check_z_bound(5.0, 4.0, 0.0).passed);

  const Grid1D g(16, 1.0);
  const ReactionSystem sys = instantiate_model(QuadraticReversibleParams{}, {1.0, 1.0, 1.0, 1.0});
  const auto run = tracked(sys, constant_state(g, {1.0, 1.0, 1.0, 1.0}), 2.0, 0.01, 0.2, 1.0);
  CHECK_FALSE(run.report.z_bound.passed);
  CHECK_FALSE(run.report.passed());
}

TEST_CASE("b uses the 1/d_1 convention on vanishing cells") {
  const Grid1D g(3, 1.0);
  SystemState s;
  s.species.emplace_back(g, std::vector<double>{0.0, 1.0, 2.0});
  s.species.emplace_back(g, std::vector<double>{0.0, 1.0, 0.0});
  const std::vector<double> d{2.0, 4.0};
  const Field b = compute_b(s, d);
  CHECK(b[0] == 0.5);
  CHECK(b[1] == doctest::Approx(2.0 / 6.0).epsilon(1e-15));
  CHECK(b[2] == 0.5);
}

TEST_CASE("bump run satisfies the auxiliary bounds pointwise") {
  const Grid1D g(48, 1.0);
  const ReactionSystem sys = instantiate_model(QuadraticReversibleParams{}, {1.0, 0.5, 0.25, 2.0});
  const auto run = tracked(sys, bump_state(g), 4.0, 2e-3, 0.3);
  const auto& r = run.report;
  CHECK(r.b_min >= 1.0 / 2.0 - 1e-9);
  CHECK(r.b_max <= 1.0 / 0.25 + 1e-9);
  CHECK(r.u_hat_min >= 0.0);
  CHECK(r.u_hat_excess <= 1e-9);
  CHECK(r.u_hat_bound.passed);
  CHECK(r.z_bound.passed);
  for (double v : run.aux.v[0].values()) CHECK(v >= 0.0);
  // gamma = 0 probe on u_hat is its oscillation at the final time or earlier.
  CHECK(r.holder.at(0.25).u_hat >= 0.0);
  CHECK(r.passed());
}

TEST_CASE("residuals shrink under joint refinement") {
  const ReactionSystem sys = instantiate_model(QuadraticReversibleParams{}, {1.0, 0.5, 0.25, 2.0});
  // Bumps with a nonzero slope at the wall make the discrete Lap^2 u grow like 1/h near it,
  // which spoils the rate; smooth compatible data shows the clean first order.
  const auto coarse = tracked(sys, cosine_state(Grid1D(32, 1.0)), 4.0, 4e-3, 0.2);
  const auto fine = tracked(sys, cosine_state(Grid1D(64, 1.0)), 4.0, 2e-3, 0.2);
  // First order in (h, dt) jointly: halving both should roughly halve the residuals.
  CHECK(coarse.report.vd_consistency / fine.report.vd_consistency >= 1.8);
  CHECK(coarse.report.zvd_residual / fine.report.zvd_residual >= 1.8);
  // Hoelder probes stay bounded.
  for (double gamma : {0.25, 0.5}) {
    const double ratio = coarse.report.holder.at(gamma).z_hat / fine.report.holder.at(gamma).z_hat;
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 2.0);
  }
}

TEST_CASE("mass step monitor on exact and inequality forms") {
  const Grid1D g(16, 2.0);
  const ReactionSystem lv =
      instantiate_model(SkewLVParams{{{0.0, 1.0}, {-1.0, 0.0}}, {1.0, 1.0}}, {1.0, 0.1});
  SystemState init;
  init.species.emplace_back(g, 1.0);
  init.species.emplace_back(g, 2.0);
  MassStepMonitor monitor(lv);
  SolverConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 0.5;
  const StepHook hooks[] = {monitor.hook()};
  const auto traj = run_simulation(lv, init, cfg, hooks);
  CHECK(monitor.passed());
  CHECK(monitor.worst_identity_residual() <= 1e-12);
  CHECK(total_mass(traj.snapshots.back().state) ==
        doctest::Approx(6.0 * std::pow(0.99, 50)).epsilon(1e-12));

  const MassAudit audit = conservation_and_mass(traj, lv);
  CHECK(audit.laws.empty());
  CHECK(audit.envelope_passed);
}

TEST_CASE("conservation laws of the reversible reaction") {
  const ReactionSystem sys = instantiate_model(QuadraticReversibleParams{}, {1.0, 0.5, 0.25, 2.0});
  const std::vector<double> m{1.0, 2.0, 3.0, 4.0};
  CHECK(conservation_laws(sys, m) == std::vector<double>{4.0, 5.0, 6.0});
  const Grid1D g(32, 1.0);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.2;
  const auto traj = run_simulation(sys, bump_state(g), cfg);
  const MassAudit audit = conservation_and_mass(traj, sys);
  REQUIRE(audit.laws.size() == 3);
  for (const auto& law : audit.laws) CHECK(law.max_relative_drift <= 1e-12);
  CHECK(audit.passed());
}

TEST_CASE("single heat species keeps its mass and a tight envelope") {
  const Grid1D g(20, 1.0);
  const ReactionSystem sys = constant_source(0.0);
  SystemState s;
  Field f(g);
  for (std::size_t j = 0; j < 20; ++j) f[j] = j < 10 ? 2.0 : 0.5;
  s.species.push_back(f);
  SolverConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 1.0;
  const auto traj = run_simulation(sys, s, cfg);
  const MassAudit audit = conservation_and_mass(traj, sys);
  CHECK(std::abs(audit.envelope_excess) <= 1e-12);
  CHECK(audit.envelope_passed);
}

TEST_CASE("entropy probe is NaN without a strictly positive cell") {
  const Grid1D g(4, 1.0);
  const ReactionSystem sys = instantiate_model(QuadraticReversibleParams{}, {1.0, 1.0, 1.0, 1.0});
  CHECK(std::isnan(max_entropy_dissipation(sys, constant_state(g, {0.0, 1.0, 1.0, 1.0}))));
  CHECK(max_entropy_dissipation(sys, constant_state(g, {1.0, 1.0, 1.0, 1.0})) == 0.0);
}

TEST_CASE("interpolation scaling check") {
  const std::vector<InterpolationSample> zeros(3);
  const auto v = interpolation_scaling_check(zeros, 0.5, 2.0);
  CHECK(v.vacuous);
  CHECK(v.passed);
  CHECK_THROWS_AS(interpolation_scaling_check(std::vector<InterpolationSample>(2), 0.5, 2.0),
                  ConfigError);
  // Gradients exactly proportional to the bound terms give slope 1.
  std::vector<InterpolationSample> fam;
  for (double a : {1.0, 2.0, 4.0}) fam.push_back({0.1 * a, a, a});
  const auto s = interpolation_scaling_check(fam, 0.5, 2.0);
  CHECK(s.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.passed);
  CHECK(s.b_constant == doctest::Approx(theory::free_space_constants(1, 2.0, 0.5).b_free).epsilon(1e-15));
  // Superlinear growth against the bound fails.
  for (auto& p : fam) p.grad_vd = p.grad_vd * p.grad_vd * 100.0;
  CHECK_FALSE(interpolation_scaling_check(fam, 0.5, 2.0).passed);
}

TEST_CASE("amplitude family on reversible bump data is monotone in the gradient") {
  const ReactionSystem sys = instantiate_model(QuadraticReversibleParams{}, {1.0, 0.5, 0.25, 2.0});
  double previous = 0.0;
  for (double a : {1.0, 2.0, 4.0}) {
    SystemState s = bump_state(Grid1D(32, 1.0));
    for (auto& f : s.species) {
      for (double& v : f.values()) v *= a;
    }
    const auto run = tracked(sys, s, 4.0, 2e-3, 0.1);
    CHECK(run.report.grad_vd > previous);
    previous = run.report.grad_vd;
  }
}

TEST_CASE("forced heat probe is linear in the forcing") {
  const Grid1D g(400, 20.0);
  auto probe = [&](double amp) {
    return forced_heat_probe(
        g, 1.0, [amp](double x, double) { return std::abs(x - 10.0) < 1.0 ? amp : 0.0; }, 1e-2,
        0.5);
  };
  const auto a = probe(1.0), b = probe(3.0);
  CHECK(b.grad_sup == doctest::Approx(3.0 * a.grad_sup).epsilon(1e-12));
  CHECK(b.sup_u == doctest::Approx(3.0 * a.sup_u).epsilon(1e-12));
  CHECK(a.forcing_sup == 1.0);
  CHECK(a.oscillation <= a.sup_u);
  CHECK_THROWS_AS(forced_heat_probe(g, 0.0, [](double, double) { return 0.0; }, 0.1, 1.0),
                  DomainError);
}
