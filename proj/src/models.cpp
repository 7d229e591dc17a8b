#include "rdsim/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rdsim/errors.hpp"

namespace rdsim {

ReactionSystem::ReactionSystem(std::string name, ModelKind kind, std::vector<double> diffusion,
                               PointReaction reaction, MassControl mass_control, Growth growth,
                               MassRate exact_mass_rate)
    : name_(std::move(name)),
      kind_(kind),
      diffusion_(std::move(diffusion)),
      reaction_(std::move(reaction)),
      mass_control_(mass_control),
      growth_(growth),
      exact_mass_rate_(std::move(exact_mass_rate)) {
  if (diffusion_.empty()) throw ContractError("ReactionSystem: no species");
  for (std::size_t i = 0; i < diffusion_.size(); ++i) {
    if (!(diffusion_[i] > 0.0) || !std::isfinite(diffusion_[i])) {
      throw DomainError("ReactionSystem: diffusion coefficient " + std::to_string(i + 1) +
                        " must be positive");
    }
  }
  if (!reaction_) throw ContractError("ReactionSystem: missing reaction evaluator");
  if (!(mass_control_.k0 >= 0.0)) throw DomainError("ReactionSystem: K0 must be >= 0");
  if (!std::isfinite(mass_control_.k1)) throw DomainError("ReactionSystem: K1 must be finite");
  if (!(growth_.k >= 0.0)) throw DomainError("ReactionSystem: K must be >= 0");
  if (!(growth_.epsilon >= 0.0)) throw DomainError("ReactionSystem: epsilon must be >= 0");
}

double ReactionSystem::max_diffusion() const {
  return *std::max_element(diffusion_.begin(), diffusion_.end());
}

double ReactionSystem::min_diffusion() const {
  return *std::min_element(diffusion_.begin(), diffusion_.end());
}

namespace {

void require_species(const std::vector<double>& d, std::size_t n) {
  if (d.size() != n) {
    throw ContractError("instantiate_model: expected " + std::to_string(n) +
                        " diffusion coefficients, got " + std::to_string(d.size()));
  }
}

ReactionSystem make_quadratic(std::vector<double> d) {
  require_species(d, 4);
  PointReaction f = [](std::span<const double> u, double, std::span<double> out) {
    const double backward = u[2] * u[3] - u[0] * u[1];
    out[0] = backward;
    out[1] = backward;
    out[2] = -backward;
    out[3] = -backward;
  };
  // |f_i| <= u1 u2 + u3 u4 <= |u|^2 / 2.
  return ReactionSystem("quadratic_reversible", ModelKind::quadratic_reversible, std::move(d),
                        std::move(f), MassControl{0.0, 0.0}, Growth{1.0, 0.0},
                        [](double) { return 0.0; });
}

ReactionSystem make_skew_lv(const SkewLVParams& params, std::vector<double> d) {
  const std::size_t n = params.tau.size();
  if (n == 0) throw ContractError("SkewLVParams: tau is empty");
  if (params.a.size() != n) throw ContractError("SkewLVParams: A must be N x N with N = len(tau)");
  for (const auto& row : params.a) {
    if (row.size() != n) throw ContractError("SkewLVParams: A must be square");
  }
  require_species(d, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (params.a[i][j] + params.a[j][i] != 0.0) {
        throw DomainError("SkewLVParams: A is not skew-symmetric at (" + std::to_string(i + 1) +
                          "," + std::to_string(j + 1) + ")");
      }
    }
  }
  // sum_i f_i = -sum_i tau_i u_i <= -min(tau) sum_i u_i on the orthant.
  const double k1 = -*std::min_element(params.tau.begin(), params.tau.end());
  double k = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row_norm = 0.0;
    for (double a : params.a[i]) row_norm += a * a;
    k = std::max(k, 0.5 * std::abs(params.tau[i]) + std::sqrt(row_norm));
  }
  if (k == 0.0) k = 1.0;
  PointReaction f = [a = params.a, tau = params.tau](std::span<const double> u, double,
                                                 std::span<double> out) {
    const std::size_t n = tau.size();
    for (std::size_t i = 0; i < n; ++i) {
      double rate = -tau[i];
      for (std::size_t j = 0; j < n; ++j) rate += a[i][j] * u[j];
      out[i] = rate * u[i];
    }
  };
  return ReactionSystem("skew_lv", ModelKind::skew_lotka_volterra, std::move(d), std::move(f),
                        MassControl{0.0, k1}, Growth{k, 0.0});
}

ReactionSystem make_custom(const CustomPolynomialParams& params, std::vector<double> d) {
  const std::size_t n = params.n_species;
  if (n == 0) throw ContractError("CustomPolynomialParams: no species");
  if (params.terms.size() != n) {
    throw ContractError("CustomPolynomialParams: need one term list per species");
  }
  for (const auto& list : params.terms) {
    for (const auto& m : list) {
      if (m.powers.size() != n) {
        throw ContractError("CustomPolynomialParams: monomial exponent vector has wrong length");
      }
      if (!std::isfinite(m.coefficient)) {
        throw DomainError("CustomPolynomialParams: non-finite coefficient");
      }
    }
  }
  require_species(d, n);
  PointReaction f = [terms = params.terms](std::span<const double> u, double,
                                         std::span<double> out) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      double acc = 0.0;
      for (const auto& m : terms[i]) {
        double v = m.coefficient;
        for (std::size_t j = 0; j < m.powers.size(); ++j) {
          for (unsigned p = 0; p < m.powers[j]; ++p) v *= u[j];
        }
        acc += v;
      }
      out[i] = acc;
    }
  };
  ReactionSystem::MassRate rate;
  if (params.conservative) rate = [k0 = params.mass_control.k0](double) { return k0; };
  return ReactionSystem(params.name, ModelKind::custom_polynomial, std::move(d), std::move(f),
                        params.mass_control, params.growth, std::move(rate));
}

}  // namespace

ReactionSystem instantiate_model(const ModelParams& params, std::vector<double> diffusion) {
  return std::visit(
      [&](const auto& s) -> ReactionSystem {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, QuadraticReversibleParams>) {
          return make_quadratic(std::move(diffusion));
        } else if constexpr (std::is_same_v<T, SkewLVParams>) {
          return make_skew_lv(s, std::move(diffusion));
        } else {
          return make_custom(s, std::move(diffusion));
        }
      },
      params);
}

std::vector<double> eval_reaction(const ReactionSystem& sys, std::span<const double> u,
                                  double t) {
  if (u.size() != sys.n_species()) throw ContractError("eval_reaction: wrong state length");
  std::vector<double> point(u.begin(), u.end());
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!std::isfinite(point[i]) || point[i] < -kClampTolerance) {
      throw DomainError("eval_reaction: component " + std::to_string(i + 1) +
                        " outside the nonnegative orthant");
    }
    if (point[i] < 0.0) point[i] = 0.0;
  }
  std::vector<double> out(point.size());
  sys.reaction()(point, t, out);
  return out;
}

OrthantSampler::OrthantSampler(std::uint64_t seed, double lo, double hi)
    : engine_(seed), log_lo_(std::log(lo)), log_hi_(std::log(hi)) {}

double OrthantSampler::next_unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double OrthantSampler::uniform(double a, double b) { return a + (b - a) * next_unit(); }

std::vector<double> OrthantSampler::point(std::size_t n) {
  std::vector<double> u(n);
  for (auto& v : u) v = std::exp(uniform(log_lo_, log_hi_));
  return u;
}

StructureVerdict check_structure(const ReactionSystem& sys, std::uint64_t seed,
                                 std::size_t n_samples) {
  if (n_samples == 0) throw ContractError("check_structure: n_samples must be >= 1");
  const std::size_t n = sys.n_species();
  const auto& [k0, k1] = sys.mass_control();
  const auto& [k, eps] = sys.growth();
  OrthantSampler sampler(seed);
  StructureVerdict verdict;
  verdict.quasi_positive.worst = std::numeric_limits<double>::infinity();
  verdict.mass_control.worst = std::numeric_limits<double>::infinity();
  std::vector<double> f(n);
  for (std::size_t s = 0; s < n_samples; ++s) {
    std::vector<double> u = sampler.point(n);

    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> face = u;
      face[i] = 0.0;
      sys.reaction()(face, 0.0, f);
      verdict.quasi_positive.worst = std::min(verdict.quasi_positive.worst, f[i]);
      if (f[i] < -1e-12 && verdict.quasi_positive.passed) {
        verdict.quasi_positive.passed = false;
        verdict.quasi_positive.witness = face;
      }
    }

    sys.reaction()(u, 0.0, f);
    const double mass = std::accumulate(u.begin(), u.end(), 0.0);
    const double total = std::accumulate(f.begin(), f.end(), 0.0);
    // Margin is positive when the inequality holds.
    const double margin = k0 + k1 * mass + 1e-9 * (1.0 + mass) - total;
    verdict.mass_control.worst = std::min(verdict.mass_control.worst, margin);
    if (margin < 0.0 && verdict.mass_control.passed) {
      verdict.mass_control.passed = false;
      verdict.mass_control.witness = u;
    }

    double norm2 = 0.0;
    for (double v : u) norm2 += v * v;
    const double envelope = k * (1.0 + std::pow(std::sqrt(norm2), 2.0 + eps));
    for (std::size_t i = 0; i < n; ++i) {
      const double ratio = std::abs(f[i]) / envelope;
      verdict.growth.worst = std::max(verdict.growth.worst, ratio);
      if (ratio > 1.0 + 1e-12 && verdict.growth.passed) {
        verdict.growth.passed = false;
        verdict.growth.witness = u;
      }
    }
  }
  verdict.samples_used = n_samples;
  return verdict;
}

double entropy_dissipation(const ReactionSystem& sys, std::span<const double> u, double t) {
  if (u.size() != sys.n_species()) throw ContractError("entropy_dissipation: wrong state length");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0)) {
      throw DomainError("entropy_dissipation: component " + std::to_string(i + 1) +
                        " must be positive");
    }
  }
  std::vector<double> f(u.size());
  sys.reaction()(u, t, f);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += f[i] * std::log(u[i]);
  return sum;
}

}  // namespace rdsim
