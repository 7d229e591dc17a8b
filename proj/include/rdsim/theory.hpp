#pragma once

// Closed-form quantities: special functions, interpolation constants of the gradient
// estimate, exponent bookkeeping, the reversible-reaction equilibrium and rate fitting.

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace rdsim::theory {

/// Gamma function on x > 0 (Lanczos, g = 7, nine terms). Relative error below 1e-13.
double gamma_fn(double x);

/// Surface area of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

/// Exact Gaussian moment: integral over R^n of |z|^delta exp(-|z|^2) dz.
double gaussian_moment(int n, double delta);

enum class ConstantsCase { free_space, bounded_domain };

struct InterpolationConstants {
  double gamma = 0.0;
  int n = 1;
  double d = 1.0;
  std::optional<double> c_n, kappa_n;
  // Bounded-domain coefficients, present only when c_n and kappa_n were supplied.
  std::optional<double> b1, b2, b3, b_bounded;
  // Free-space coefficients.
  double b4 = 0.0, b5 = 0.0, b_free = 0.0;
  /// Active constant: b_bounded when available, b_free otherwise.
  double b = 0.0;
  ConstantsCase source = ConstantsCase::free_space;
};

/// [(1-g)^{1/(2-g)} + (1-g)^{(g-1)/(2-g)}] * ba^{(1-g)/(2-g)} * bb^{1/(2-g)}.
double combined_constant(double ba, double bb, double gamma);

/// Free-space constants; the bounded-domain set as well when c_n and kappa_n are given.
InterpolationConstants free_space_constants(int n, double d, double gamma,
                                            std::optional<double> c_n = std::nullopt,
                                            std::optional<double> kappa_n = std::nullopt);

/// Splitting parameter k minimising ba F / sqrt(k) + bb H sqrt(k)^{1-gamma}.
double optimal_k(double ba, double bb, double f, double h, double gamma);

/// ba F / sqrt(k) + bb H sqrt(k)^{1-gamma} evaluated at k.
double two_term_bound(double ba, double bb, double f, double h, double gamma, double k);

struct ExponentAlgebra {
  double epsilon = 0.0;
  double delta = 1.0;
  double lambda = 0.0;
  bool admissible = false;
  std::optional<double> xi;  // 1 / (1 - lambda) when admissible
};

/// lambda = (3 + eps)/4 + (1 - delta) / (2 (2 - delta)).
ExponentAlgebra exponent_algebra(double epsilon, double delta);

/// delta / (2 - delta); admissibility is equivalent to epsilon below this value.
double admissibility_threshold(double delta);

struct QuadEquilibrium {
  std::array<double, 3> masses{};  // M13, M23, M24
  std::array<double, 4> u{};
};

/// Positive constant equilibrium of the reversible reaction for the given conserved masses.
/// Throws DomainError (naming the component) when the equilibrium lies on the boundary.
QuadEquilibrium quad_equilibrium(double m13, double m23, double m24);

enum class FitMode { exponential, polynomial };

struct RateFit {
  /// Exponential mode: decay rate mu in y = A e^{-mu t}. Polynomial mode: exponent xi in A t^xi.
  double rate = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit in log space. Needs at least 4 samples with y > 0 (and t > 0 for the
/// polynomial mode). Throws DataError otherwise.
RateFit fit_rate(std::span<const double> t, std::span<const double> y, FitMode mode);

}  // namespace rdsim::theory
