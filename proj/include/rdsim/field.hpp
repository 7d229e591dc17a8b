#pragma once

#include <cstddef>
#include <vector>

namespace rdsim {

/// Uniform cell-centred partition of [0, length].
class Grid1D {
 public:
  Grid1D(std::size_t n_cells, double length);

  std::size_t n_cells() const noexcept { return n_cells_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / static_cast<double>(n_cells_); }
  /// Centre of cell j, zero-based: (j + 1/2) h.
  double center(std::size_t j) const noexcept {
    return (static_cast<double>(j) + 0.5) * spacing();
  }
  std::vector<double> centers() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  std::size_t n_cells_;
  double length_;
};

/// Cell values of one scalar unknown. All entries finite.
class Field {
 public:
  explicit Field(const Grid1D& grid, double fill = 0.0);
  Field(const Grid1D& grid, std::vector<double> values);

  const Grid1D& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  double& operator[](std::size_t j) noexcept { return values_[j]; }

  double max() const;
  double min() const;
  double sup_norm() const;
  bool all_finite() const noexcept;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

/// Throws ContractError unless both fields live on the same grid.
void require_same_grid(const Field& a, const Field& b);

}  // namespace rdsim
