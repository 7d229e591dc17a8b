#include "rdsim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rdsim/errors.hpp"

namespace rdsim {

Field apply_laplacian(const Field& f, Execution ex) {
  Field out(f.grid());
  kernels::laplacian(ex, f.values(), f.grid().spacing(), out.values());
  return out;
}

double integrate(const Field& f) {
  const double h = f.grid().spacing();
  double sum = 0.0;
  for (double v : f.values()) sum += v * h;
  return sum;
}

double grad_sup(const Field& f) {
  const double h = f.grid().spacing();
  double best = 0.0;
  for (std::size_t j = 0; j + 1 < f.size(); ++j) {
    best = std::max(best, std::abs(f[j + 1] - f[j]) / h);
  }
  return best;
}

double holder_modulus(const Field& f, double gamma, Execution ex) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw DomainError("holder_modulus: gamma must lie in [0, 1)");
  }
  const Grid1D& grid = f.grid();
  const std::size_t n = grid.n_cells();
  if (n <= kHolderExactLimit) {
    return kernels::holder_pairs(ex, f.values(), grid.centers(), gamma);
  }
  std::vector<double> values(kHolderExactLimit), positions(kHolderExactLimit);
  for (std::size_t k = 0; k < kHolderExactLimit; ++k) {
    const std::size_t j = k * n / kHolderExactLimit;
    values[k] = f[j];
    positions[k] = grid.center(j);
  }
  return kernels::holder_pairs(ex, values, positions, gamma);
}

}  // namespace rdsim
