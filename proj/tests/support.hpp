#pragma once

#include <initializer_list>
#include <vector>

#include "kreinrange/detail/random.hpp"
#include "kreinrange/krein_operator.hpp"

namespace kt {

using namespace kreinrange;

inline Matrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index k = 0;
    for (const Complex& v : row) m(i, k++) = v;
    ++i;
  }
  return m;
}

inline Matrix diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double v : d) m(i, i) = v, ++i;
  return m;
}

inline Vector vec(std::initializer_list<Complex> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const Complex& c : v) x(i++) = c;
  return x;
}

// The three worked examples.
inline KreinOperator e1() {
  return build_operator(build_space(mat({{0, 1}, {1, 0}})), mat({{0, 1}, {0, 0}}));
}
inline KreinOperator e2() { return build_operator(build_space(diag({1, -1})), diag({1, -1})); }
inline KreinOperator e3() { return build_operator(build_space(diag({1, 1, -1})), diag({2, 1, 0})); }

struct Generated {
  Eigen::Index dim;
  SubspaceClass kernel;
  SubspaceClass range;
  std::uint64_t seed;
  KreinOperator op;
};

// `count` operators cycling through every achievable class pair of dims
// lo..hi, the same walk the suite makes.
inline std::vector<Generated> corpus(std::size_t count, std::uint64_t seed, Eigen::Index lo = 2,
                                     Eigen::Index hi = 8) {
  struct Combo {
    Eigen::Index dim;
    SubspaceClass k, r;
  };
  std::vector<Combo> combos;
  for (Eigen::Index d = lo; d <= hi; ++d)
    for (const auto& [k, r] : achievable_classes(d)) combos.push_back({d, k, r});
  std::vector<Generated> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Combo& c = combos[i % combos.size()];
    const std::uint64_t s = seed * 1000003ULL + i;
    out.push_back({c.dim, c.k, c.r, s, generate_case(c.dim, c.k, c.r, s)});
  }
  return out;
}

inline Vector random_vector(detail::Rng& rng, Eigen::Index n) { return detail::complex_gaussian(rng, n); }

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

} // namespace kt
