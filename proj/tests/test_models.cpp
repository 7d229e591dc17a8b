#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rdsim/errors.hpp"
#include "rdsim/models.hpp"

using namespace rdsim;

namespace {

ReactionSystem reversible() {
  return instantiate_model(QuadraticReversibleParams{}, {1.0, 0.5, 0.25, 2.0});
}

ReactionSystem lotka_volterra() {
  return instantiate_model(SkewLVParams{{{0.0, 1.0}, {-1.0, 0.0}}, {1.0, 1.0}}, {1.0, 0.1});
}

// f1 = -u2, f2 = u1: fails quasi-positivity on the face u1 = 0.
CustomPolynomialParams broken_params() {
  CustomPolynomialParams s;
  s.n_species = 2;
  s.terms = {{{-1.0, {0, 1}}}, {{1.0, {1, 0}}}};
  s.mass_control = {0.0, 1.0};
  return s;
}

}  // namespace

TEST_CASE("reversible reaction values and structure constants") {
  const ReactionSystem sys = reversible();
  CHECK(sys.n_species() == 4);
  CHECK(sys.kind() == ModelKind::quadratic_reversible);
  CHECK(sys.mass_control().k0 == 0.0);
  CHECK(sys.mass_control().k1 == 0.0);
  const auto f = eval_reaction(sys, std::vector<double>{1.0, 2.0, 3.0, 4.0});
  // b = u3 u4 - u1 u2 = 12 - 2
  CHECK(f == std::vector<double>{10.0, 10.0, -10.0, -10.0});
  REQUIRE(sys.exact_mass_rate());
  CHECK(sys.exact_mass_rate()(3.0) == 0.0);
}

TEST_CASE("reversible reaction sums to exactly zero") {
  const ReactionSystem sys = reversible();
  oracle::Gen gen(10);
  for (int k = 0; k < 1000; ++k) {
    const auto f = eval_reaction(sys, gen.vec(4, 0.0, 1e3));
    CHECK(f[0] + f[1] + f[2] + f[3] == 0.0);
  }
}

TEST_CASE("skew Lotka-Volterra values and constants") {
  const ReactionSystem sys = lotka_volterra();
  CHECK(sys.mass_control().k0 == 0.0);
  CHECK(sys.mass_control().k1 == -1.0);
  // f1 = (-1 + u2) u1, f2 = (-1 - u1) u2
  const auto f = eval_reaction(sys, std::vector<double>{2.0, 3.0});
  CHECK(f[0] == 4.0);
  CHECK(f[1] == -9.0);
  // K = max_i (|tau_i| / 2 + ||a_i||_2) = 1/2 + 1
  CHECK(sys.growth().k == 1.5);
  CHECK_THROWS_AS(instantiate_model(SkewLVParams{{{0.0, 1.0}, {1.0, 0.0}}, {1.0, 1.0}}, {1.0, 1.0}),
                  DomainError);
  CHECK_THROWS_AS(instantiate_model(SkewLVParams{{{0.0, 1.0}}, {1.0, 1.0}}, {1.0, 1.0}),
                  ContractError);
}

TEST_CASE("skew Lotka-Volterra mass rate equals -tau sum u when tau is uniform") {
  const ReactionSystem sys = lotka_volterra();
  oracle::Gen gen(11);
  for (int k = 0; k < 500; ++k) {
    const auto u = gen.vec(2, 0.0, 50.0);
    const auto f = eval_reaction(sys, u);
    CHECK(f[0] + f[1] == doctest::Approx(-(u[0] + u[1])).epsilon(1e-12));
  }
}

TEST_CASE("custom polynomial evaluation against hand formulas") {
  CustomPolynomialParams s;
  s.n_species = 2;
  // f1 = 2 u1^2 u2 - 3, f2 = 0.5 u2^3
  s.terms = {{{2.0, {2, 1}}, {-3.0, {0, 0}}}, {{0.5, {0, 3}}}};
  const ReactionSystem sys = instantiate_model(s, {1.0, 1.0});
  oracle::Gen gen(12);
  for (int k = 0; k < 100; ++k) {
    const auto u = gen.vec(2, 0.0, 5.0);
    const auto f = eval_reaction(sys, u);
    CHECK(f[0] == doctest::Approx(2.0 * u[0] * u[0] * u[1] - 3.0).epsilon(1e-14));
    CHECK(f[1] == doctest::Approx(0.5 * u[1] * u[1] * u[1]).epsilon(1e-14));
  }
  CHECK_FALSE(sys.exact_mass_rate());
  s.terms.pop_back();
  CHECK_THROWS_AS(instantiate_model(s, {1.0, 1.0}), ContractError);
}

TEST_CASE("conservative custom model exposes the constant mass rate") {
  CustomPolynomialParams s;
  s.n_species = 1;
  s.terms = {{{2.0, {0}}}};
  s.mass_control = {2.0, 0.0};
  s.conservative = true;
  const ReactionSystem sys = instantiate_model(s, {1.0});
  REQUIRE(sys.exact_mass_rate());
  CHECK(sys.exact_mass_rate()(1.5) == 2.0);
}

TEST_CASE("eval_reaction clamps tiny negatives and rejects larger ones") {
  const ReactionSystem sys = reversible();
  const auto f = eval_reaction(sys, std::vector<double>{-1e-13, 1.0, 1.0, 1.0});
  CHECK(f[0] == 1.0);  // u1 treated as zero
  CHECK_THROWS_AS(eval_reaction(sys, std::vector<double>{-1e-6, 1.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(eval_reaction(sys, std::vector<double>{1.0, 1.0}), ContractError);
}

TEST_CASE("system validation") {
  PointReaction zero = [](std::span<const double>, double, std::span<double> out) {
    for (double& v : out) v = 0.0;
  };
  CHECK_THROWS_AS(ReactionSystem("x", ModelKind::custom_polynomial, {1.0, 0.0}, zero, {}, {}),
                  DomainError);
  CHECK_THROWS_AS(ReactionSystem("x", ModelKind::custom_polynomial, {}, zero, {}, {}),
                  ContractError);
  CHECK_THROWS_AS(ReactionSystem("x", ModelKind::custom_polynomial, {1.0}, zero, {-1.0, 0.0}, {}),
                  DomainError);
  const ReactionSystem ok("x", ModelKind::custom_polynomial, {1.0, 3.0, 0.5}, zero, {}, {});
  CHECK(ok.max_diffusion() == 3.0);
  CHECK(ok.min_diffusion() == 0.5);
}

TEST_CASE("structure audit passes the built-in models") {
  CHECK(check_structure(reversible(), 1, 2000).passed());
  CHECK(check_structure(lotka_volterra(), 2, 2000).passed());
}

TEST_CASE("structure audit names the failing assumption with a witness") {
  const ReactionSystem sys = instantiate_model(broken_params(), {1.0, 1.0});
  const StructureVerdict v = check_structure(sys, 3, 200);
  CHECK_FALSE(v.quasi_positive.passed);
  REQUIRE(v.quasi_positive.witness.size() == 2);
  CHECK(v.quasi_positive.witness[0] == 0.0);
  CHECK(v.mass_control.passed);
  CHECK(v.samples_used == 200);
}

TEST_CASE("structure audit catches understated constants") {
  CustomPolynomialParams s;
  s.n_species = 1;
  s.terms = {{{1.0, {0}}, {1.0, {1}}}};  // f = 1 + u
  s.mass_control = {0.5, 1.0};           // true K0 is 1
  s.growth = {1.0, 0.0};
  CHECK_FALSE(check_structure(instantiate_model(s, {1.0}), 4, 500).mass_control.passed);
  s.mass_control = {1.0, 1.0};
  s.terms = {{{1.0, {3}}}};  // cubic growth exceeds K (1 + u^2)
  s.mass_control = {0.0, 0.0};
  const auto v = check_structure(instantiate_model(s, {1.0}), 5, 500);
  CHECK_FALSE(v.growth.passed);
}

TEST_CASE("structure audit is deterministic in the seed") {
  const ReactionSystem sys = instantiate_model(broken_params(), {1.0, 1.0});
  const auto a = check_structure(sys, 42, 100), b = check_structure(sys, 42, 100);
  CHECK(a.quasi_positive.witness == b.quasi_positive.witness);
  CHECK(a.quasi_positive.worst == b.quasi_positive.worst);
}

TEST_CASE("entropy dissipation is nonpositive for the reversible reaction") {
  const ReactionSystem sys = reversible();
  oracle::Gen gen(13);
  for (int k = 0; k < 1000; ++k) {
    const auto u = gen.vec(4, 1e-3, 10.0);
    // (u3 u4 - u1 u2) log(u1 u2 / (u3 u4)) <= 0
    const double b = u[2] * u[3] - u[0] * u[1];
    const double expected = b * std::log(u[0] * u[1] / (u[2] * u[3]));
    CHECK(entropy_dissipation(sys, u) == doctest::Approx(expected).epsilon(1e-10).scale(1.0));
    CHECK(entropy_dissipation(sys, u) <= 1e-12);
  }
  CHECK_THROWS_AS(entropy_dissipation(sys, std::vector<double>{0.0, 1.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("orthant sampler range and reproducibility") {
  OrthantSampler a(7), b(7), c(8);
  bool differs = false;
  for (int k = 0; k < 200; ++k) {
    const auto p = a.point(3), q = b.point(3), r = c.point(3);
    CHECK(p == q);
    differs = differs || p != r;
    for (double v : p) {
      CHECK(v >= 1e-6);
      CHECK(v <= 1e3);
    }
    const double t = a.uniform(2.0, 5.0);
    b.uniform(2.0, 5.0);
    CHECK(t >= 2.0);
    CHECK(t <= 5.0);
  }
  CHECK(differs);
}
