#include "rdsim/theory.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rdsim/errors.hpp"

namespace rdsim::theory {

namespace {

// Godfrey's coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x) {
  // Valid for x >= 0.5.
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (z + k);
  const double t = z + kLanczosG + 0.5;
  // t^{z+1/2} is split in two so it does not overflow before exp(-t) brings it back down.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * series;
}

void require_gamma_range(double gamma, const char* where) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw DomainError(std::string(where) + ": gamma must lie in [0, 1)");
  }
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("gamma_fn: x must be positive");
  if (x < 0.5) return lanczos_gamma(x + 1.0) / x;
  // Integers are returned exactly as factorials.
  if (x == std::floor(x) && x <= 30.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    return f;
  }
  return lanczos_gamma(x);
}

double unit_sphere_area(int n) {
  if (n < 1) throw DomainError("unit_sphere_area: dimension must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / gamma_fn(0.5 * n);
}

double gaussian_moment(int n, double delta) {
  if (n < 1) throw DomainError("gaussian_moment: dimension must be >= 1");
  if (!(delta >= 0.0)) throw DomainError("gaussian_moment: delta must be >= 0");
  return 0.5 * unit_sphere_area(n) * gamma_fn(0.5 * (n + delta));
}

double combined_constant(double ba, double bb, double gamma) {
  require_gamma_range(gamma, "combined_constant");
  const double p = 1.0 / (2.0 - gamma);
  const double q = (1.0 - gamma) / (2.0 - gamma);
  const double bracket = std::pow(1.0 - gamma, p) + std::pow(1.0 - gamma, -q);
  return bracket * std::pow(ba, q) * std::pow(bb, p);
}

InterpolationConstants free_space_constants(int n, double d, double gamma,
                                            std::optional<double> c_n,
                                            std::optional<double> kappa_n) {
  require_gamma_range(gamma, "free_space_constants");
  if (n < 1) throw DomainError("free_space_constants: n must be >= 1");
  if (!(d > 0.0)) throw DomainError("free_space_constants: d must be positive");
  if (c_n.has_value() != kappa_n.has_value()) {
    throw DomainError("free_space_constants: c_n and kappa_n must be given together");
  }
  const double pi = std::numbers::pi;
  const double omega = unit_sphere_area(n);

  InterpolationConstants c;
  c.gamma = gamma;
  c.n = n;
  c.d = d;
  c.b4 = omega / (std::pow(pi, 0.5 * (n - 1)) * std::sqrt(d)) * gamma_fn(0.5 * (n + 1));
  c.b5 = omega / std::pow(pi, 0.5 * n) * std::pow(2.0, gamma - 1.0) *
         std::pow(d, 0.5 * (gamma - 1.0)) * gamma_fn(0.5 * (1.0 + gamma)) *
         gamma_fn(0.5 * (n + 1 + gamma));
  c.b_free = combined_constant(c.b4, c.b5, gamma);
  c.b = c.b_free;

  if (c_n) {
    if (!(*c_n > 0.0) || !(*kappa_n > 0.0)) {
      throw DomainError("free_space_constants: c_n and kappa_n must be positive");
    }
    c.c_n = c_n;
    c.kappa_n = kappa_n;
    c.b1 = *c_n * std::pow(*kappa_n, -0.5 * n) * gamma_fn(0.5 * n) * std::sqrt(pi);
    c.b2 = *c_n * std::pow(*kappa_n, -0.5 * (n + gamma)) * gamma_fn(0.5 * (n + gamma + 1.0));
    c.b3 = *c.b2 * gamma_fn(0.5 * (gamma + 1.0));
    c.b_bounded = combined_constant(*c.b1, *c.b3, gamma);
    c.b = *c.b_bounded;
    c.source = ConstantsCase::bounded_domain;
  }
  return c;
}

double optimal_k(double ba, double bb, double f, double h, double gamma) {
  require_gamma_range(gamma, "optimal_k");
  if (!(h > 0.0)) throw DomainError("optimal_k: H must be positive");
  if (!(bb > 0.0)) throw DomainError("optimal_k: Bb must be positive");
  if (!(f >= 0.0)) throw DomainError("optimal_k: F must be nonnegative");
  if (f == 0.0) return 0.0;
  const double root = std::pow(ba * f / (bb * h * (1.0 - gamma)), 1.0 / (2.0 - gamma));
  return root * root;
}

double two_term_bound(double ba, double bb, double f, double h, double gamma, double k) {
  const double s = std::sqrt(k);
  return ba * f / s + bb * h * std::pow(s, 1.0 - gamma);
}

double admissibility_threshold(double delta) { return delta / (2.0 - delta); }

ExponentAlgebra exponent_algebra(double epsilon, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw DomainError("exponent_algebra: delta must lie in (0, 1]");
  }
  if (!(epsilon >= 0.0)) throw DomainError("exponent_algebra: epsilon must be >= 0");
  ExponentAlgebra e;
  e.epsilon = epsilon;
  e.delta = delta;
  e.lambda = (3.0 + epsilon) / 4.0 + (1.0 - delta) / (2.0 * (2.0 - delta));
  e.admissible = e.lambda < 1.0;
  if (e.admissible) e.xi = 1.0 / (1.0 - e.lambda);
  return e;
}

QuadEquilibrium quad_equilibrium(double m13, double m23, double m24) {
  if (!(m13 > 0.0 && m23 > 0.0 && m24 > 0.0)) {
    throw DomainError("quad_equilibrium: all masses must be positive");
  }
  QuadEquilibrium eq;
  eq.masses = {m13, m23, m24};
  // Closed forms with the only cancellation confined to e = m13 + m24 - m23.
  const double s = m13 + m24;
  const double e = s - m23;
  const double u1 = m13 * e / s;
  const double u2 = m23 * m24 / s;
  const double u3 = m13 * m23 / s;
  const double u4 = m24 * e / s;
  eq.u = {u1, u2, u3, u4};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(eq.u[i] > 0.0)) {
      throw DomainError("quad_equilibrium: boundary equilibrium, u" + std::to_string(i + 1) +
                        " = " + std::to_string(eq.u[i]));
    }
  }
  const double lhs = u1 * u2, rhs = u3 * u4;
  if (std::abs(lhs - rhs) > 1e-12 * std::max(std::abs(lhs), std::abs(rhs))) {
    throw NumericalFailure("quad_equilibrium: detailed-balance residual above 1e-12");
  }
  return eq;
}

RateFit fit_rate(std::span<const double> t, std::span<const double> y, FitMode mode) {
  if (t.size() != y.size()) throw DataError("fit_rate: t and y differ in length");
  const std::size_t n = t.size();
  if (n < 4) throw DataError("fit_rate: need at least 4 samples");
  std::vector<double> xs(n), ys(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(y[k] > 0.0) || !std::isfinite(y[k])) throw DataError("fit_rate: y must be positive");
    if (mode == FitMode::polynomial && !(t[k] > 0.0)) {
      throw DataError("fit_rate: polynomial mode needs t > 0");
    }
    xs[k] = mode == FitMode::polynomial ? std::log(t[k]) : t[k];
    ys[k] = std::log(y[k]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  if (!(sxx > 1e-300)) throw DataError("fit_rate: degenerate abscissae");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = ys[k] - (intercept + slope * xs[k]);
    ss_res += r * r;
  }
  RateFit fit;
  fit.rate = mode == FitMode::exponential ? -slope : slope;
  fit.prefactor = std::exp(intercept);
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace rdsim::theory
