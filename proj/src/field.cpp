#include "rdsim/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rdsim/errors.hpp"

namespace rdsim {

Grid1D::Grid1D(std::size_t n_cells, double length) : n_cells_(n_cells), length_(length) {
  if (n_cells < 2) throw ContractError("Grid1D: n_cells must be at least 2");
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ContractError("Grid1D: length must be positive and finite");
  }
}

std::vector<double> Grid1D::centers() const {
  std::vector<double> x(n_cells_);
  for (std::size_t j = 0; j < n_cells_; ++j) x[j] = center(j);
  return x;
}

Field::Field(const Grid1D& grid, double fill) : grid_(grid), values_(grid.n_cells(), fill) {
  if (!std::isfinite(fill)) throw ContractError("Field: non-finite fill value");
}

Field::Field(const Grid1D& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n_cells()) {
    throw ContractError("Field: expected " + std::to_string(grid_.n_cells()) + " values, got " +
                        std::to_string(values_.size()));
  }
  if (!all_finite()) throw ContractError("Field: non-finite value");
}

double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }

double Field::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

bool Field::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw ContractError("fields live on different grids");
}

}  // namespace rdsim
