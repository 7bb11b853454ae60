#pragma once

#include <cstdint>
#include <random>

#include "kreinrange/types.hpp"

namespace kreinrange::detail {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vector complex_gaussian(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

inline Matrix complex_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) m.col(j) = complex_gaussian(rng, rows);
  return m;
}

// Haar-distributed unitary (QR of a Gaussian matrix with the R phases removed).
inline Matrix random_unitary(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<Matrix> qr(complex_gaussian(rng, n, n));
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

} // namespace kreinrange::detail
