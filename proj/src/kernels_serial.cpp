#include <algorithm>
#include <cmath>
#include <vector>

#include "rdsim/kernels.hpp"

namespace rdsim::kernels::serial {

void laplacian(std::span<const double> f, double h, std::span<double> out) {
  const std::size_t n = f.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double right = j + 1 < n ? (f[j + 1] - f[j]) / h : 0.0;
    const double left = j > 0 ? (f[j] - f[j - 1]) / h : 0.0;
    out[j] = (right - left) / h;
  }
}

void reaction(const PointReaction& f, double t, std::span<const Field> u, std::span<Field> out) {
  const std::size_t n_species = u.size();
  const std::size_t n_cells = u.front().size();
  std::vector<double> point(n_species), rate(n_species);
  for (std::size_t j = 0; j < n_cells; ++j) {
    for (std::size_t i = 0; i < n_species; ++i) point[i] = u[i][j];
    f(point, t, rate);
    for (std::size_t i = 0; i < n_species; ++i) out[i][j] = rate[i];
  }
}

double holder_pairs(std::span<const double> values, std::span<const double> positions,
                    double gamma) {
  const std::size_t n = values.size();
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double q =
          std::abs(values[j] - values[k]) / std::pow(std::abs(positions[j] - positions[k]), gamma);
      best = std::max(best, q);
    }
  }
  return best;
}

int implicit_diffusion(std::span<const double> r, std::span<Field> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (!neumann_implicit_solve(r[i], fields[i].values())) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace rdsim::kernels::serial
