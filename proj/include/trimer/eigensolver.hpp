#pragma once

#include <array>

#include "trimer/matrix8.hpp"

namespace trimer {

// Eigendecomposition of one 8x8 Hermitian matrix. Column i of `eigenvectors`
// pairs with eigenvalues[i]; eigenvalues are ascending and the columns are
// orthonormal.
struct Spectrum {
  std::array<double, 8> eigenvalues{};   // Kelvin, ascending
  std::array<cplx, 64> eigenvectors{};   // row-major, column i <-> eigenvalue i

  cplx vec(int row, int col) const { return eigenvectors[row * 8 + col]; }
};

// Cyclic complex Jacobi with a fixed sweep order, so identical inputs give
// bit-identical output. The input is symmetrized as (H + H^dagger)/2 before
// solving; inputs whose hermiticity defect exceeds 1e-13 * (1 + ||H||) are
// rejected with ValidationError. Failure to reduce the off-diagonal norm
// below 1e-14 * ||H|| within 100 sweeps raises ConvergenceError.
Spectrum diagonalize(const HermitianMatrix8& h);

} // namespace trimer
