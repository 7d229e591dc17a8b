#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rdsim/kernels.hpp"

namespace rdsim::kernels::parallel {

void laplacian(std::span<const double> f, double h, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(f.size());
#pragma omp parallel for schedule(static) if (f.size() >= kParallelMinCells)
  for (std::int64_t j = 0; j < n; ++j) {
    const double right = j + 1 < n ? (f[j + 1] - f[j]) / h : 0.0;
    const double left = j > 0 ? (f[j] - f[j - 1]) / h : 0.0;
    out[j] = (right - left) / h;
  }
}

void reaction(const PointReaction& f, double t, std::span<const Field> u, std::span<Field> out) {
  const std::size_t n_species = u.size();
  const auto n_cells = static_cast<std::int64_t>(u.front().size());
#pragma omp parallel if (u.front().size() >= kParallelMinCells)
  {
    std::vector<double> point(n_species), rate(n_species);
#pragma omp for schedule(static)
    for (std::int64_t j = 0; j < n_cells; ++j) {
      for (std::size_t i = 0; i < n_species; ++i) point[i] = u[i][j];
      f(point, t, rate);
      for (std::size_t i = 0; i < n_species; ++i) out[i][j] = rate[i];
    }
  }
}

double holder_pairs(std::span<const double> values, std::span<const double> positions,
                    double gamma) {
  const auto n = static_cast<std::int64_t>(values.size());
  double best = 0.0;
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best) if (values.size() >= 256)
  for (std::int64_t j = 0; j < n; ++j) {
    for (std::int64_t k = j + 1; k < n; ++k) {
      const double q =
          std::abs(values[j] - values[k]) / std::pow(std::abs(positions[j] - positions[k]), gamma);
      best = std::max(best, q);
    }
  }
  return best;
}

int implicit_diffusion(std::span<const double> r, std::span<Field> fields) {
  const auto n = static_cast<std::int64_t>(fields.size());
  const std::size_t work = fields.empty() ? 0 : fields.size() * fields.front().size();
  int failed = -1;
#pragma omp parallel for schedule(static) if (work >= kParallelMinCells)
  for (std::int64_t i = 0; i < n; ++i) {
    if (!neumann_implicit_solve(r[i], fields[i].values())) {
#pragma omp critical(rdsim_implicit_failure)
      if (failed < 0 || i < failed) failed = static_cast<int>(i);
    }
  }
  return failed;
}

}  // namespace rdsim::kernels::parallel
