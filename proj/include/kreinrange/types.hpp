#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>

namespace kreinrange {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// Largest singular value; zero for empty matrices.
double spectral_norm(const Matrix& m);

// (m + m*) / 2
Matrix hermitian_part(const Matrix& m);

} // namespace kreinrange
