#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rdsim/kernels.hpp"

namespace rdsim {

/// Declared mass-control constants: sum_i f_i(u) <= k0 + k1 * sum_i u_i on the orthant.
struct MassControl {
  double k0 = 0.0;
  double k1 = 0.0;
};

/// Declared growth constants: |f_i(u)| <= k (1 + |u|^{2 + epsilon}).
struct Growth {
  double k = 1.0;
  double epsilon = 0.0;
};

enum class ModelKind { quadratic_reversible, skew_lotka_volterra, custom_polynomial, augmented };

/// Reaction-diffusion system: diffusion coefficients, nonlinearity and its structure constants.
/// Immutable after construction.
class ReactionSystem {
 public:
  /// Exact value of sum_i f_i as a function of time alone, when the nonlinearity has that form.
  using MassRate = std::function<double(double t)>;

  ReactionSystem(std::string name, ModelKind kind, std::vector<double> diffusion,
                 PointReaction reaction, MassControl mass_control, Growth growth,
                 MassRate exact_mass_rate = {});

  const std::string& name() const noexcept { return name_; }
  ModelKind kind() const noexcept { return kind_; }
  std::size_t n_species() const noexcept { return diffusion_.size(); }
  const std::vector<double>& diffusion() const noexcept { return diffusion_; }
  const PointReaction& reaction() const noexcept { return reaction_; }
  const MassControl& mass_control() const noexcept { return mass_control_; }
  const Growth& growth() const noexcept { return growth_; }
  /// Empty unless sum_i f_i(u, t) is independent of u.
  const MassRate& exact_mass_rate() const noexcept { return exact_mass_rate_; }

  double max_diffusion() const;
  double min_diffusion() const;

 private:
  std::string name_;
  ModelKind kind_;
  std::vector<double> diffusion_;
  PointReaction reaction_;
  MassControl mass_control_;
  Growth growth_;
  MassRate exact_mass_rate_;
};

/// A1 + A2 <-> A3 + A4 with unit rate constants.
struct QuadraticReversibleParams {};

/// f_i(u) = (-tau_i + sum_j a_ij u_j) u_i with A + A^T = 0 exactly.
struct SkewLVParams {
  std::vector<std::vector<double>> a;
  std::vector<double> tau;
};

struct Monomial {
  double coefficient = 0.0;
  std::vector<unsigned> powers;  // one exponent per species
};

/// f_i = sum of monomials; the structure constants are declared by the user.
struct CustomPolynomialParams {
  std::size_t n_species = 0;
  std::vector<std::vector<Monomial>> terms;  // terms[i] builds f_i
  MassControl mass_control;
  Growth growth;
  /// Declares sum_i f_i == k0 identically (mass conservation with source).
  bool conservative = false;
  std::string name = "custom";
};

using ModelParams = std::variant<QuadraticReversibleParams, SkewLVParams, CustomPolynomialParams>;

ReactionSystem instantiate_model(const ModelParams& params, std::vector<double> diffusion);

/// Lower clamp band for near-zero negative inputs.
inline constexpr double kClampTolerance = 1e-12;

/// f(u, t) after clamping entries in [-1e-12, 0) to zero. Throws DomainError below the band.
std::vector<double> eval_reaction(const ReactionSystem& sys, std::span<const double> u,
                                  double t = 0.0);

struct AssumptionCheck {
  bool passed = true;
  /// Worst observed value of the checked quantity (meaning depends on the check).
  double worst = 0.0;
  /// First violating sample point, empty when passed.
  std::vector<double> witness;
};

struct StructureVerdict {
  AssumptionCheck quasi_positive;
  AssumptionCheck mass_control;
  AssumptionCheck growth;
  std::size_t samples_used = 0;

  bool passed() const noexcept {
    return quasi_positive.passed && mass_control.passed && growth.passed;
  }
};

/// Random probe of quasi-positivity, mass control and growth. Coordinates are drawn
/// log-uniformly in [1e-6, 1e3] from a generator seeded with seed.
StructureVerdict check_structure(const ReactionSystem& sys, std::uint64_t seed,
                                 std::size_t n_samples);

/// sum_i f_i(u) log u_i for strictly positive u.
double entropy_dissipation(const ReactionSystem& sys, std::span<const double> u, double t = 0.0);

/// Log-uniform sampler shared by the structure audits.
class OrthantSampler {
 public:
  explicit OrthantSampler(std::uint64_t seed, double lo = 1e-6, double hi = 1e3);
  std::vector<double> point(std::size_t n);
  double uniform(double a, double b);

 private:
  std::mt19937_64 engine_;
  double log_lo_, log_hi_;
  double next_unit();
};

}  // namespace rdsim
