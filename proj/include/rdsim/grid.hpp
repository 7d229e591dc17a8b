#pragma once

// Finite-volume operators and metrics on a uniform 1-D grid with zero-flux boundaries.

#include "rdsim/field.hpp"
#include "rdsim/kernels.hpp"

namespace rdsim {

/// Cell-centred Neumann Laplacian, (Lf)_j = (F_{j+1/2} - F_{j-1/2}) / h with zero boundary
/// fluxes. Symmetric negative semidefinite; annihilates constants.
Field apply_laplacian(const Field& f, Execution ex = Execution::parallel);

/// Midpoint-rule integral, summed left to right.
double integrate(const Field& f);

/// Largest one-sided face gradient |f_{j+1} - f_j| / h.
double grad_sup(const Field& f);

/// Largest number of cells compared exhaustively by holder_modulus.
inline constexpr std::size_t kHolderExactLimit = 2048;

/// max_{j != k} |f_j - f_k| / |x_j - x_k|^gamma for gamma in [0, 1). At gamma = 0 this is the
/// oscillation max - min. Grids above kHolderExactLimit cells are uniformly subsampled.
double holder_modulus(const Field& f, double gamma, Execution ex = Execution::parallel);

}  // namespace rdsim
