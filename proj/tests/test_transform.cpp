#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rdsim/grid.hpp"
#include "rdsim/transform.hpp"

using namespace rdsim;

namespace {

ReactionSystem lotka_volterra() {
  return instantiate_model(SkewLVParams{{{0.0, 1.0}, {-1.0, 0.0}}, {1.0, 1.0}}, {1.0, 0.5});
}

ReactionSystem reversible() {
  return instantiate_model(QuadraticReversibleParams{}, {1.0, 0.5, 0.25, 2.0});
}

std::vector<double> g_of(const ReactionSystem& sys, const std::vector<double>& w, double t) {
  std::vector<double> out(sys.n_species());
  sys.reaction()(w, t, out);
  return out;
}

}  // namespace

TEST_CASE("rescaling examples and round trip") {
  const std::vector<double> u{4.0};
  CHECK(rescale_solution(u, 0.0, 3.0) == u);
  CHECK(rescale_solution(u, -1.0, std::log(2.0))[0] == doctest::Approx(8.0).epsilon(1e-15));
  oracle::Gen gen(40);
  for (int k = 0; k < 1000; ++k) {
    const auto v = gen.vec(3, 0.0, 100.0);
    const double k1 = gen.uniform(-3.0, 3.0), t = gen.uniform(0.0, 5.0);
    const auto back = unscale_solution(rescale_solution(v, k1, t), k1, t);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(back[i] - v[i]) <= 1e-14 * std::max(1.0, std::abs(v[i])) * 4);
    }
  }
}

TEST_CASE("reversible augmentation is the identity plus a silent species") {
  const AugmentedSystem aug = augment_system(reversible());
  CHECK(aug.augmented.n_species() == 5);
  CHECK(aug.augmented.diffusion().back() == 1.0);
  oracle::Gen gen(41);
  for (int k = 0; k < 200; ++k) {
    auto w = gen.vec(5, 0.0, 10.0);
    const auto g = g_of(aug.augmented, w, gen.uniform(0.0, 3.0));
    const auto f = eval_reaction(aug.base, std::vector<double>(w.begin(), w.end() - 1));
    for (std::size_t i = 0; i < 4; ++i) CHECK(g[i] == f[i]);
    CHECK(g[4] == 0.0);
  }
}

TEST_CASE("Lotka-Volterra augmentation at a hand-computed point") {
  // w = (1, 2), t = 1: sum g_i = e (sum f(u) + e^{-1} sum w) with u = e^{-1} w, which vanishes.
  const AugmentedSystem aug = augment_system(lotka_volterra());
  CHECK(aug.k0 == 0.0);
  CHECK(aug.k1 == -1.0);
  const auto g = g_of(aug.augmented, {1.0, 2.0, 0.0}, 1.0);
  const double e = std::exp(1.0), u1 = 1.0 / e, u2 = 2.0 / e;
  CHECK(g[0] == doctest::Approx(e * (-1.0 + u2) * u1 + 1.0).epsilon(1e-14));
  CHECK(g[1] == doctest::Approx(e * (-1.0 - u1) * u2 + 2.0).epsilon(1e-14));
  CHECK(std::abs(g[0] + g[1]) <= 1e-14);
  CHECK(std::abs(g[2]) <= 1e-14);
}

TEST_CASE("conservative source augmentation feeds the extra species") {
  CustomPolynomialParams s;
  s.n_species = 2;
  s.terms = {{{-1.0, {1, 1}}}, {{1.0, {1, 1}}}};  // sum f = 0
  s.mass_control = {1.0, 0.0};
  const AugmentedSystem aug = augment_system(instantiate_model(s, {1.0, 1.0}));
  oracle::Gen gen(42);
  for (int k = 0; k < 100; ++k) {
    const auto g = g_of(aug.augmented, gen.vec(3, 0.0, 10.0), gen.uniform(0.0, 2.0));
    CHECK(g[2] == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("augmented sum is K0 e^{-K1 t} on random states") {
  CustomPolynomialParams s;
  s.n_species = 2;
  // f1 = 0.5 - u1 + u1 u2, f2 = -u1 u2: sum f = 0.5 - u1 <= 0.5 + 0 * m.
  s.terms = {{{0.5, {0, 0}}, {-1.0, {1, 0}}, {1.0, {1, 1}}}, {{-1.0, {1, 1}}}};
  s.mass_control = {0.5, 0.0};
  s.growth = {2.0, 0.0};
  const ReactionSystem base = instantiate_model(s, {1.0, 1.0});
  for (const ReactionSystem& sys : {base, lotka_volterra()}) {
    const AugmentedSystem aug = augment_system(sys);
    oracle::Gen gen(43);
    double worst = 0.0, min_extra = INFINITY;
    for (int k = 0; k < 10000; ++k) {
      const auto w = gen.vec(aug.augmented.n_species(), 0.0, 100.0);
      const double t = gen.uniform(0.0, 5.0);
      const auto g = g_of(aug.augmented, w, t);
      double sum = 0.0, scale = 0.0;
      for (double x : g) {
        sum += x;
        scale += std::abs(x);
      }
      const double target = aug.k0 * std::exp(-aug.k1 * t);
      worst = std::max(worst, std::abs(sum - target) / std::max(1.0, scale + std::abs(target)));
      min_extra = std::min(min_extra, g.back() / std::max(1.0, scale));
    }
    CHECK(worst <= 1e-10);
    CHECK(min_extra >= -1e-10);
  }
}

TEST_CASE("verify_augmented passes clean systems and catches an offset") {
  const auto clean = verify_augmented(augment_system(lotka_volterra()), 1, 1000, 5.0);
  CHECK(clean.passed());
  CHECK(clean.conservation_residual <= 1e-12);
  CHECK(std::isfinite(clean.fitted_growth_constant));
  CHECK(verify_augmented(augment_system(reversible()), 2, 1000, 5.0).conservation_residual == 0.0);
  const auto broken = verify_augmented(augment_system(lotka_volterra(), 0.1), 1, 1000, 5.0);
  CHECK_FALSE(broken.conservation_passed);
  CHECK_FALSE(broken.passed());
}

TEST_CASE("augmented states and reconstruction") {
  const Grid1D g(5, 1.0);
  SystemState s;
  s.t = std::log(2.0);
  s.species.emplace_back(g, 3.0);
  s.species.emplace_back(g, 1.0);
  const SystemState a = augment_state(s);
  CHECK(a.species.size() == 3);
  CHECK(a.species.back().sup_norm() == 0.0);
  const SystemState r = reconstruct_state(a, -1.0);
  CHECK(r.species.size() == 2);
  CHECK(r.species[0][0] == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("rescaled simulation commutes with rescaling up to O(dt)") {
  const Grid1D g(16, 1.0);
  const ReactionSystem base = lotka_volterra();
  const AugmentedSystem aug = augment_system(base);
  oracle::Gen gen(44);
  SystemState init;
  init.species.emplace_back(g, gen.vec(16, 0.5, 2.0));
  init.species.emplace_back(g, gen.vec(16, 0.5, 2.0));
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.2;
  const auto direct = run_simulation(base, init, cfg).snapshots.back().state;
  const auto via = reconstruct_state(
      run_simulation(aug.augmented, augment_state(init), cfg).snapshots.back().state, aug.k1);
  double diff = 0.0, sup = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 16; ++j) {
      diff = std::max(diff, std::abs(direct.species[i][j] - via.species[i][j]));
      sup = std::max(sup, direct.species[i][j]);
    }
  }
  CHECK(diff <= 5.0 * cfg.dt * (1.0 + sup * sup));
}

TEST_CASE("reconstructed decay rate of the uniform Lotka-Volterra system") {
  const Grid1D g(16, 1.0);
  const AugmentedSystem aug = augment_system(lotka_volterra());
  SystemState init;
  init.species.emplace_back(g, 1.0);
  init.species.emplace_back(g, 0.5);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 4.0;
  cfg.record_every = 100;
  const auto traj = run_simulation(aug.augmented, augment_state(init), cfg);
  std::vector<double> t, y;
  for (const auto& s : traj.snapshots) {
    const auto u = reconstruct_state(s.state, aug.k1);
    double m = 0.0;
    for (const auto& f : u.species) m += integrate(f);
    t.push_back(s.t);
    y.push_back(std::log(m));
  }
  // The rescaled mass of the first N species is conserved by the step, so the reconstructed
  // mass decays exactly like e^{K1 t}.
  const double mu = -oracle::least_squares(t, y).second;
  CHECK(mu == doctest::Approx(-aug.k1).epsilon(1e-9));
}
