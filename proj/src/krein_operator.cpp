#include "kreinrange/krein_operator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "kreinrange/detail/linalg.hpp"
#include "kreinrange/detail/random.hpp"
#include "kreinrange/error.hpp"

namespace kreinrange {

double KreinOperator::cluster_tolerance() const {
  return space_.tolerances().cluster * std::max(1.0, j_norm_);
}

KreinOperator build_operator(const GramSpace& space, const Matrix& a) {
  if (a.rows() != space.dim() || a.cols() != space.dim()) {
    std::ostringstream msg;
    msg << "operator is " << a.rows() << "x" << a.cols() << " in a space of dimension " << space.dim();
    throw KreinError(ErrorCode::DimensionMismatch, msg.str());
  }
  const Tolerances& tol = space.tolerances();
  const Matrix raw = space.gram() * a;
  const double raw_norm = spectral_norm(raw);
  if ((raw - raw.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * raw_norm)
    throw KreinError(ErrorCode::NotSelfadjoint, "G*A is not Hermitian");

  KreinOperator op(space);
  op.psd_ = hermitian_part(raw);
  op.psd_norm_ = raw_norm;

  Eigen::SelfAdjointEigenSolver<Matrix> es(op.psd_, Eigen::EigenvaluesOnly);
  const double lowest = op.dim() > 0 ? es.eigenvalues()(0) : 0.0;
  if (lowest < -tol.psd * raw_norm) {
    std::ostringstream msg;
    msg << "G*A has eigenvalue " << lowest << " below -tau_psd*|G*A|";
    throw KreinError(ErrorCode::NotNonNegative, msg.str());
  }

  op.mat_ = space.gram_inverse() * op.psd_;
  op.j_norm_ = space.j_operator_norm(op.mat_);

  const auto split = detail::split_psd(op.psd_, tol.rank_cut(raw_norm, op.dim()));
  op.kernel_ = split.kernel_vectors;
  op.factor_ = split.range_values.cwiseSqrt().asDiagonal() * split.range_vectors.adjoint();
  op.range_ = space.gram_inverse() * split.range_vectors;
  return op;
}

Matrix krein_adjoint(const GramSpace& space, const Matrix& m) {
  if (m.rows() != space.dim() || m.cols() != space.dim())
    throw KreinError(ErrorCode::DimensionMismatch, "matrix size does not match the space");
  return space.gram_inverse() * m.adjoint() * space.gram();
}

Shifted shifted(const KreinOperator& op, double t) {
  Shifted out;
  out.mat = op.mat() - t * Matrix::Identity(op.dim(), op.dim());
  const Matrix p = hermitian_part(op.space().gram() * out.mat);
  const RealVector ev = detail::hermitian_eigenvalues(p);
  const double scale = spectral_norm(p);
  out.is_nonnegative = ev(0) >= -op.space().tolerances().psd * scale;
  return out;
}

SubspaceClass kernel_class(const KreinOperator& op) {
  return classify_subspace(op.space(), op.kernel_basis());
}

SubspaceClass range_class(const KreinOperator& op) {
  return classify_subspace(op.space(), op.range_basis());
}

namespace {

// Block counts in canonical coordinates:
//   plus       [+1] x [lambda > 0]
//   minus      [-1] x [lambda < 0]
//   ker_plus   [+1] x [0]
//   ker_minus  [-1] x [0]
//   jordan     [[0,1],[1,0]] x [[0,c],[0,0]]
// ker A has inertia (ker_plus, ker_minus, jordan), ran A has (plus, minus, jordan).
struct BlockCounts {
  int plus = 0;
  int minus = 0;
  int ker_plus = 0;
  int ker_minus = 0;
  int jordan = 0;
};

std::vector<BlockCounts> block_layouts(Eigen::Index dim, SubspaceClass kernel, SubspaceClass range) {
  std::vector<BlockCounts> out;
  const int n = static_cast<int>(dim);
  for (int j = 0; 2 * j <= n; ++j)
    for (int p = 0; p + 2 * j <= n; ++p)
      for (int m = 0; p + m + 2 * j <= n; ++m)
        for (int kp = 0; p + m + kp + 2 * j <= n; ++kp) {
          const int km = n - p - m - kp - 2 * j;
          if (p + kp + j == 0 || m + km + j == 0) continue;
          if (class_from_inertia(kp, km, j) != kernel) continue;
          if (class_from_inertia(p, m, j) != range) continue;
          out.push_back({p, m, kp, km, j});
        }
  return out;
}

// Distinct values keep a gap of at least 1e-3; occasionally a value is
// repeated exactly to produce a multiple eigenvalue.
double draw_eigenvalue(detail::Rng& rng, std::vector<double>& used) {
  if (!used.empty() && detail::uniform(rng, 0.0, 1.0) < 0.15) {
    auto idx = static_cast<std::size_t>(detail::uniform(rng, 0.0, static_cast<double>(used.size())));
    return used[std::min(idx, used.size() - 1)];
  }
  for (;;) {
    double v = std::exp(detail::uniform(rng, std::log(0.25), std::log(4.0)));
    bool clear = std::all_of(used.begin(), used.end(), [&](double u) { return std::abs(u - v) >= 1e-3; });
    if (clear) {
      used.push_back(v);
      return v;
    }
  }
}

} // namespace

bool is_achievable(Eigen::Index dim, SubspaceClass kernel, SubspaceClass range) {
  return dim >= 1 && !block_layouts(dim, kernel, range).empty();
}

std::vector<std::pair<SubspaceClass, SubspaceClass>> achievable_classes(Eigen::Index dim) {
  constexpr std::array kAll{SubspaceClass::Zero,         SubspaceClass::Positive,
                            SubspaceClass::Negative,     SubspaceClass::Neutral,
                            SubspaceClass::NonNegDegenerate, SubspaceClass::NonPosDegenerate,
                            SubspaceClass::Indefinite};
  std::vector<std::pair<SubspaceClass, SubspaceClass>> out;
  for (auto k : kAll)
    for (auto r : kAll)
      if (r != SubspaceClass::Zero && is_achievable(dim, k, r)) out.emplace_back(k, r);
  return out;
}

KreinOperator generate_case(Eigen::Index dim, SubspaceClass kernel, SubspaceClass range,
                            std::uint64_t seed, const Tolerances& tol) {
  const auto layouts = dim >= 1 ? block_layouts(dim, kernel, range) : std::vector<BlockCounts>{};
  if (layouts.empty()) {
    std::ostringstream msg;
    msg << "no operator of dimension " << dim << " has kernel " << to_string(kernel) << " and range "
        << to_string(range) << " in an indefinite space";
    throw KreinError(ErrorCode::Unachievable, msg.str());
  }

  auto rng = detail::make_rng(seed, 0x6b7265696eULL);
  auto pick = static_cast<std::size_t>(detail::uniform(rng, 0.0, static_cast<double>(layouts.size())));
  const BlockCounts counts = layouts[std::min(pick, layouts.size() - 1)];

  const Eigen::Index n = dim;
  Matrix g0 = Matrix::Zero(n, n);
  Matrix p0 = Matrix::Zero(n, n);
  Eigen::Index at = 0;
  std::vector<double> used_plus, used_minus;
  for (int i = 0; i < counts.plus; ++i, ++at) {
    g0(at, at) = 1.0;
    p0(at, at) = draw_eigenvalue(rng, used_plus);
  }
  for (int i = 0; i < counts.minus; ++i, ++at) {
    // G0 = -1, A0 = -lambda, so P0 = lambda > 0.
    g0(at, at) = -1.0;
    p0(at, at) = draw_eigenvalue(rng, used_minus);
  }
  for (int i = 0; i < counts.ker_plus; ++i, ++at) g0(at, at) = 1.0;
  for (int i = 0; i < counts.ker_minus; ++i, ++at) g0(at, at) = -1.0;
  for (int i = 0; i < counts.jordan; ++i, at += 2) {
    g0(at, at + 1) = g0(at + 1, at) = 1.0;
    // [[0,1],[1,0]] * [[0,c],[0,0]] = [[0,0],[0,c]]
    p0(at + 1, at + 1) = std::exp(detail::uniform(rng, std::log(0.5), std::log(2.0)));
  }

  RealVector sigma(n);
  for (Eigen::Index i = 0; i < n; ++i) sigma(i) = std::exp(detail::uniform(rng, -1.0, 1.0));
  const Matrix s = detail::random_unitary(rng, n) * sigma.asDiagonal() * detail::random_unitary(rng, n);

  const Matrix g = hermitian_part(s.adjoint() * g0 * s);
  Matrix p = hermitian_part(s.adjoint() * p0 * s);

  // Clip the roundoff-level eigenvalues so validation is deterministic.
  Eigen::SelfAdjointEigenSolver<Matrix> es(p);
  RealVector ev = es.eigenvalues();
  const double cut = tol.rank_cut(std::abs(ev(n - 1)), n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (ev(i) <= cut) ev(i) = 0.0;
  p = hermitian_part(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint());

  GramSpace space = build_space(g, tol);
  return build_operator(space, space.gram_inverse() * p);
}

KreinOperator congruence_transform(const KreinOperator& op, const Matrix& s) {
  if (s.rows() != op.dim() || s.cols() != op.dim())
    throw KreinError(ErrorCode::DimensionMismatch, "congruence matrix has the wrong size");
  const double cond = detail::condition_number(s);
  if (!(cond <= 1e8)) {
    std::ostringstream msg;
    msg << "condition number " << cond << " exceeds 1e8";
    throw KreinError(ErrorCode::IllConditioned, msg.str());
  }
  GramSpace space = build_space(s.adjoint() * op.space().gram() * s, op.space().tolerances());
  // S^{-1} A S = G'^{-1} (S* P S); the right-hand form keeps G'A' Hermitian.
  const Matrix p = hermitian_part(s.adjoint() * op.psd_witness() * s);
  return build_operator(space, space.gram_inverse() * p);
}

} // namespace kreinrange
