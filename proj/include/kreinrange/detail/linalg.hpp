#pragma once

#include "kreinrange/types.hpp"

namespace kreinrange::detail {

// Eigenpairs of a Hermitian PSD matrix split at `cut`: eigenvalues above the
// cut go to the range part, the rest span the kernel.
struct PsdSplit {
  Matrix range_vectors;   // n x r, orthonormal
  RealVector range_values;  // r, all > cut
  Matrix kernel_vectors;  // n x (n - r), orthonormal
};

PsdSplit split_psd(const Matrix& p, double cut);

// Orthonormal basis of the column span; columns must be independent at the
// relative cut (checked by the caller).
Matrix orthonormalize(const Matrix& basis);

RealVector singular_values(const Matrix& m);

// Hermitian eigenvalues in ascending order.
RealVector hermitian_eigenvalues(const Matrix& h);

// Smallest / largest singular value ratio; +inf for singular input.
double condition_number(const Matrix& m);

} // namespace kreinrange::detail
