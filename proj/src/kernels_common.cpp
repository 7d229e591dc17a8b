#include <cmath>
#include <vector>

#include "rdsim/kernels.hpp"

namespace rdsim::kernels {

bool thomas_solve(std::span<const double> lower, std::span<const double> diag,
                  std::span<const double> upper, std::span<double> x,
                  std::span<double> scratch) noexcept {
  const std::size_t n = diag.size();
  if (n == 0) return true;
  double pivot = diag[0];
  if (pivot == 0.0 || !std::isfinite(pivot)) return false;
  x[0] /= pivot;
  for (std::size_t j = 1; j < n; ++j) {
    scratch[j - 1] = upper[j - 1] / pivot;
    pivot = diag[j] - lower[j - 1] * scratch[j - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) return false;
    x[j] = (x[j] - lower[j - 1] * x[j - 1]) / pivot;
  }
  for (std::size_t j = n - 1; j-- > 0;) x[j] -= scratch[j] * x[j + 1];
  return true;
}

bool neumann_implicit_solve(double r, std::span<double> x) noexcept {
  const std::size_t n = x.size();
  if (n < 2) return false;
  std::vector<double> lower(n - 1, -r), upper(n - 1, -r), diag(n, 1.0 + 2.0 * r), scratch(n);
  diag.front() = 1.0 + r;
  diag.back() = 1.0 + r;
  return thomas_solve(lower, diag, upper, x, scratch);
}

}  // namespace rdsim::kernels
