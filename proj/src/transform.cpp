#include "rdsim/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rdsim/errors.hpp"

namespace rdsim {

std::vector<double> rescale_solution(std::span<const double> u, double k1, double t) {
  if (!(t >= 0.0)) throw DomainError("rescale_solution: t must be >= 0");
  const double s = std::exp(-k1 * t);
  std::vector<double> w(u.begin(), u.end());
  for (double& v : w) v *= s;
  return w;
}

std::vector<double> unscale_solution(std::span<const double> w, double k1, double t) {
  if (!(t >= 0.0)) throw DomainError("unscale_solution: t must be >= 0");
  const double s = std::exp(k1 * t);
  std::vector<double> u(w.begin(), w.end());
  for (double& v : u) v *= s;
  return u;
}

AugmentedSystem augment_system(const ReactionSystem& base, double fault_offset) {
  const auto [k0, k1] = base.mass_control();
  const std::size_t n = base.n_species();
  PointReaction g = [f = base.reaction(), n, k0, k1, fault_offset](
                        std::span<const double> w, double t, std::span<double> out) {
    const double grow = std::exp(k1 * t);
    const double shrink = std::exp(-k1 * t);
    std::vector<double> u(n), fu(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = grow * w[i];
    f(u, t, fu);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = shrink * fu[i] - k1 * w[i];
      sum += out[i];
    }
    out[n] = k0 * shrink - sum + fault_offset;
  };
  std::vector<double> d = base.diffusion();
  d.push_back(1.0);
  // Growth: |g_i| <= C e^{(1+eps)|K1| T}(1 + |w|^{2+eps}); C is fitted by verify_augmented.
  // {K0, 0} bounds the mass source only for K1 >= 0; mass audits use the exact rate instead.
  ReactionSystem aug(base.name() + "+augmented", ModelKind::augmented, std::move(d), std::move(g),
                     MassControl{k0, 0.0}, base.growth(),
                     [k0, k1](double t) { return k0 * std::exp(-k1 * t); });
  return AugmentedSystem{base, std::move(aug), k0, k1};
}

SystemState augment_state(const SystemState& base_state) {
  SystemState s = base_state;
  s.species.emplace_back(base_state.grid());
  return s;
}

SystemState reconstruct_state(const SystemState& augmented_state, double k1) {
  SystemState s{augmented_state.t, augmented_state.species};
  s.species.pop_back();
  const double grow = std::exp(k1 * augmented_state.t);
  for (auto& f : s.species) {
    for (double& v : f.values()) v *= grow;
  }
  return s;
}

AugmentedVerdict verify_augmented(const AugmentedSystem& aug, std::uint64_t seed,
                                  std::size_t n_samples, double horizon) {
  if (n_samples == 0) throw ContractError("verify_augmented: n_samples must be >= 1");
  if (!(horizon >= 0.0)) throw DomainError("verify_augmented: horizon must be >= 0");
  const std::size_t n = aug.augmented.n_species();
  const double eps = aug.augmented.growth().epsilon;
  const double time_factor = std::exp((1.0 + eps) * std::abs(aug.k1) * horizon);
  OrthantSampler sampler(seed);
  AugmentedVerdict v;
  v.structure.quasi_positive.worst = std::numeric_limits<double>::infinity();
  v.min_extra_rate = std::numeric_limits<double>::infinity();
  std::vector<double> g(n);
  for (std::size_t s = 0; s < n_samples; ++s) {
    std::vector<double> w = sampler.point(n);
    const double t = sampler.uniform(0.0, horizon);

    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> face = w;
      face[i] = 0.0;
      aug.augmented.reaction()(face, t, g);
      v.structure.quasi_positive.worst = std::min(v.structure.quasi_positive.worst, g[i]);
      // Relative floor: g_{N+1} is a difference of large terms.
      double scale = 0.0;
      for (double x : g) scale += std::abs(x);
      if (g[i] < -1e-12 * std::max(1.0, scale) && v.structure.quasi_positive.passed) {
        v.structure.quasi_positive.passed = false;
        v.structure.quasi_positive.witness = face;
        v.structure.quasi_positive.witness.push_back(t);
      }
    }

    aug.augmented.reaction()(w, t, g);
    const double target = aug.k0 * std::exp(-aug.k1 * t);
    double sum = 0.0, scale = std::abs(target);
    for (double x : g) {
      sum += x;
      scale += std::abs(x);
    }
    const double residual = std::abs(sum - target) / std::max(1.0, scale);
    v.conservation_residual = std::max(v.conservation_residual, residual);
    v.min_extra_rate = std::min(v.min_extra_rate, g[n - 1]);

    double norm2 = 0.0;
    for (double x : w) norm2 += x * x;
    const double envelope = time_factor * (1.0 + std::pow(std::sqrt(norm2), 2.0 + eps));
    for (double x : g) {
      v.fitted_growth_constant = std::max(v.fitted_growth_constant, std::abs(x) / envelope);
    }
  }
  v.conservation_passed = v.conservation_residual <= 1e-10;
  v.structure.growth.worst = v.fitted_growth_constant;
  v.structure.growth.passed = std::isfinite(v.fitted_growth_constant);
  v.structure.mass_control.passed = v.conservation_passed;
  v.structure.mass_control.worst = v.conservation_residual;
  v.structure.samples_used = n_samples;
  return v;
}

}  // namespace rdsim
