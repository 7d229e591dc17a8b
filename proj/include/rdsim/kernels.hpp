#pragma once

// Data-parallel inner loops of the library. Every kernel has a serial reference
// in rdsim::kernels::serial and an OpenMP version in rdsim::kernels::parallel with
// the same signature. Both produce bit-identical results: each output element is
// computed by the same expression, and the only reduction used is max.

#include <cstddef>
#include <functional>
#include <span>

#include "rdsim/field.hpp"

namespace rdsim {

/// Pointwise reaction term: writes f(u, t) into out. Must be pure and thread-safe.
using PointReaction =
    std::function<void(std::span<const double> u, double t, std::span<double> out)>;

enum class Execution { serial, parallel };

namespace kernels {

/// Parallel loops fall back to one thread below this many iterations.
inline constexpr std::size_t kParallelMinCells = 2048;

/// In-place Thomas elimination. lower/upper have size n-1. Returns false on a zero pivot.
/// scratch must have size n.
bool thomas_solve(std::span<const double> lower, std::span<const double> diag,
                  std::span<const double> upper, std::span<double> rhs_to_x,
                  std::span<double> scratch) noexcept;

/// Solves (I - r L) x = b in place for the Neumann finite-volume Laplacian L scaled by h^2,
/// i.e. r = dt * d / h^2. Returns false on a zero pivot.
bool neumann_implicit_solve(double r, std::span<double> b_to_x) noexcept;

namespace serial {
void laplacian(std::span<const double> f, double h, std::span<double> out);
void reaction(const PointReaction& f, double t, std::span<const Field> u, std::span<Field> out);
double holder_pairs(std::span<const double> values, std::span<const double> positions,
                    double gamma);
// Solves (I - r_i L) x_i = b_i in place for each field. Returns the index of the
// first failing field, or -1.
int implicit_diffusion(std::span<const double> r, std::span<Field> fields);
}  // namespace serial

namespace parallel {
void laplacian(std::span<const double> f, double h, std::span<double> out);
void reaction(const PointReaction& f, double t, std::span<const Field> u, std::span<Field> out);
double holder_pairs(std::span<const double> values, std::span<const double> positions,
                    double gamma);
int implicit_diffusion(std::span<const double> r, std::span<Field> fields);
}  // namespace parallel

inline void laplacian(Execution ex, std::span<const double> f, double h, std::span<double> out) {
  ex == Execution::serial ? serial::laplacian(f, h, out) : parallel::laplacian(f, h, out);
}
inline void reaction(Execution ex, const PointReaction& f, double t, std::span<const Field> u,
                     std::span<Field> out) {
  ex == Execution::serial ? serial::reaction(f, t, u, out) : parallel::reaction(f, t, u, out);
}
inline double holder_pairs(Execution ex, std::span<const double> values,
                           std::span<const double> positions, double gamma) {
  return ex == Execution::serial ? serial::holder_pairs(values, positions, gamma)
                                 : parallel::holder_pairs(values, positions, gamma);
}
inline int implicit_diffusion(Execution ex, std::span<const double> r, std::span<Field> fields) {
  return ex == Execution::serial ? serial::implicit_diffusion(r, fields)
                                 : parallel::implicit_diffusion(r, fields);
}

}  // namespace kernels
}  // namespace rdsim
