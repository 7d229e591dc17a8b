#pragma once

// Exponential rescaling w = e^{-K1 t} u plus one extra species that absorbs the mass-control
// slack, turning sum_i f_i <= K0 + K1 sum_i u_i into the identity sum_i g_i = K0 e^{-K1 t}.

#include <cstdint>
#include <span>
#include <vector>

#include "rdsim/models.hpp"
#include "rdsim/solver.hpp"

namespace rdsim {

/// w = e^{-K1 t} u.
std::vector<double> rescale_solution(std::span<const double> u, double k1, double t);
/// u = e^{K1 t} w.
std::vector<double> unscale_solution(std::span<const double> w, double k1, double t);

struct AugmentedSystem {
  ReactionSystem base;
  ReactionSystem augmented;  // N + 1 species; the last has diffusion 1 and starts at zero
  double k0 = 0.0;
  double k1 = 0.0;
};

/// g_i(w, t) = e^{-K1 t} f_i(e^{K1 t} w) - K1 w_i for i <= N, and
/// g_{N+1} = K0 e^{-K1 t} - sum_{i<=N} g_i. fault_offset is added to g_{N+1} (testing only).
AugmentedSystem augment_system(const ReactionSystem& base, double fault_offset = 0.0);

/// Initial state of the augmented system: base data followed by a zero field.
SystemState augment_state(const SystemState& base_state);

/// First N species mapped back to the original variables at time state.t.
SystemState reconstruct_state(const SystemState& augmented_state, double k1);

struct AugmentedVerdict {
  StructureVerdict structure;  // quasi-positivity and growth of all N + 1 components
  double conservation_residual = 0.0;  // max relative |sum g_i - K0 e^{-K1 t}|
  bool conservation_passed = true;
  double min_extra_rate = 0.0;  // min of g_{N+1} over samples
  double fitted_growth_constant = 0.0;  // max |g_i| / (e^{(1+eps)|K1| T} (1 + |w|^{2+eps}))

  bool passed() const noexcept { return structure.passed() && conservation_passed; }
};

/// Samples (w, t) with w log-uniform in [1e-6, 1e3]^{N+1} and t uniform in [0, horizon].
AugmentedVerdict verify_augmented(const AugmentedSystem& aug, std::uint64_t seed,
                                  std::size_t n_samples, double horizon);

}  // namespace rdsim
