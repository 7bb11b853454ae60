#include "kreinrange/indefinite_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "kreinrange/detail/linalg.hpp"
#include "kreinrange/error.hpp"

namespace kreinrange {

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return detail::singular_values(m)(0);
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

namespace detail {

PsdSplit split_psd(const Matrix& p, double cut) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(p);
  const RealVector& vals = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();
  const Eigen::Index n = p.rows();
  Eigen::Index first_range = 0;
  while (first_range < n && vals(first_range) <= cut) ++first_range;
  PsdSplit out;
  out.kernel_vectors = vecs.leftCols(first_range);
  out.range_vectors = vecs.rightCols(n - first_range);
  out.range_values = vals.tail(n - first_range);
  return out;
}

Matrix orthonormalize(const Matrix& basis) {
  if (basis.cols() == 0) return basis;
  Eigen::HouseholderQR<Matrix> qr(basis);
  return qr.householderQ() * Matrix::Identity(basis.rows(), basis.cols());
}

RealVector singular_values(const Matrix& m) {
  if (m.size() == 0) return RealVector();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

RealVector hermitian_eigenvalues(const Matrix& h) {
  if (h.size() == 0) return RealVector();
  return Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

double condition_number(const Matrix& m) {
  RealVector sv = singular_values(m);
  if (sv.size() == 0) return 1.0;
  double lo = sv(sv.size() - 1);
  if (lo == 0.0) return kInf;
  return sv(0) / lo;
}

} // namespace detail

double Tolerances::rank_cut(double sigma_max, Eigen::Index dim) const {
  double rel = rank_rel > 0.0 ? rank_rel : 64.0 * kEps * static_cast<double>(std::max<Eigen::Index>(dim, 1));
  return rel * sigma_max;
}

namespace {

constexpr std::array<std::pair<SubspaceClass, std::string_view>, 7> kClassNames{{
    {SubspaceClass::Zero, "Zero"},
    {SubspaceClass::Positive, "Positive"},
    {SubspaceClass::Negative, "Negative"},
    {SubspaceClass::Neutral, "Neutral"},
    {SubspaceClass::NonNegDegenerate, "NonNegDegenerate"},
    {SubspaceClass::NonPosDegenerate, "NonPosDegenerate"},
    {SubspaceClass::Indefinite, "Indefinite"},
}};

void require_length(const GramSpace& space, const Vector& x) {
  if (x.size() != space.dim()) {
    std::ostringstream msg;
    msg << "vector of length " << x.size() << " in a space of dimension " << space.dim();
    throw KreinError(ErrorCode::DimensionMismatch, msg.str());
  }
}

} // namespace

std::string_view to_string(VectorClass c) {
  switch (c) {
    case VectorClass::Positive: return "Positive";
    case VectorClass::Negative: return "Negative";
    case VectorClass::Neutral: return "Neutral";
    case VectorClass::Zero: return "Zero";
  }
  return "?";
}

std::string_view to_string(SubspaceClass c) {
  for (const auto& [tag, name] : kClassNames)
    if (tag == c) return name;
  return "?";
}

std::optional<SubspaceClass> subspace_class_from_string(std::string_view name) {
  for (const auto& [tag, n] : kClassNames)
    if (n == name) return tag;
  return std::nullopt;
}

SubspaceClass class_from_inertia(int positive, int negative, int zero) {
  if (positive > 0 && negative > 0) return SubspaceClass::Indefinite;
  if (positive > 0) return zero > 0 ? SubspaceClass::NonNegDegenerate : SubspaceClass::Positive;
  if (negative > 0) return zero > 0 ? SubspaceClass::NonPosDegenerate : SubspaceClass::Negative;
  return zero > 0 ? SubspaceClass::Neutral : SubspaceClass::Zero;
}

RealVector GramSpace::signature() const {
  RealVector s(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) s(i) = i < inertia_.positive ? 1.0 : -1.0;
  return s;
}

double GramSpace::j_norm(const Vector& x) const {
  require_length(*this, x);
  return (canon_inv_ * x).norm();
}

double GramSpace::j_operator_norm(const Matrix& m) const {
  return spectral_norm(canon_inv_ * m * canon_);
}

GramSpace build_space(const Matrix& g, const Tolerances& tol) {
  if (g.rows() != g.cols() || g.rows() == 0)
    throw KreinError(ErrorCode::DimensionMismatch, "Gram matrix must be square and non-empty");
  const Eigen::Index n = g.rows();

  const double g_norm = spectral_norm(g);
  const double asym = (g - g.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(g_norm, 1e-300))
    throw KreinError(ErrorCode::NotHermitian, "Gram matrix is not Hermitian");

  GramSpace s;
  s.tol_ = tol;
  s.gram_ = hermitian_part(g);
  s.gram_norm_ = g_norm;

  RealVector sv = detail::singular_values(s.gram_);
  if (sv(n - 1) <= tol.rank_cut(sv(0), n))
    throw KreinError(ErrorCode::Singular, "Gram matrix is singular at the rank tolerance");

  Eigen::SelfAdjointEigenSolver<Matrix> es(s.gram_);
  const RealVector& vals = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();

  // Positive squares first, each group in descending |value| order so the
  // layout is deterministic.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if ((vals(a) > 0) != (vals(b) > 0)) return vals(a) > 0;
    return std::abs(vals(a)) > std::abs(vals(b));
  });

  Matrix v(n, n);
  RealVector abs_vals(n);
  RealVector signs(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index i = order[static_cast<std::size_t>(k)];
    v.col(k) = vecs.col(i);
    // Fix the phase: largest component real and positive.
    Eigen::Index big = 0;
    v.col(k).cwiseAbs().maxCoeff(&big);
    v.col(k) *= std::conj(v(big, k)) / std::abs(v(big, k));
    abs_vals(k) = std::abs(vals(i));
    signs(k) = vals(i) > 0 ? 1.0 : -1.0;
    if (vals(i) > 0) ++s.inertia_.positive; else ++s.inertia_.negative;
  }

  const RealVector root = abs_vals.cwiseSqrt();
  s.canon_ = v * root.cwiseInverse().asDiagonal();
  s.canon_inv_ = root.asDiagonal() * v.adjoint();
  s.fund_sym_ = hermitian_part(v * signs.asDiagonal() * v.adjoint());
  s.hilbert_gram_ = hermitian_part(v * abs_vals.asDiagonal() * v.adjoint());
  s.gram_inv_ = hermitian_part(v * abs_vals.cwiseInverse().cwiseProduct(signs).asDiagonal() * v.adjoint());
  return s;
}

Complex inner(const GramSpace& space, const Vector& x, const Vector& y) {
  require_length(space, x);
  require_length(space, y);
  return y.dot(space.gram() * x);
}

VectorClass classify_vector(const GramSpace& space, const Vector& x) {
  require_length(space, x);
  const double norm2 = x.squaredNorm();
  if (norm2 == 0.0) return VectorClass::Zero;
  const double q = inner(space, x, x).real();
  if (std::abs(q) <= space.tolerances().neutral * norm2 * space.gram_norm()) return VectorClass::Neutral;
  return q > 0 ? VectorClass::Positive : VectorClass::Negative;
}

SubspaceClass classify_subspace(const GramSpace& space, const Matrix& basis) {
  if (basis.cols() == 0) return SubspaceClass::Zero;
  if (basis.rows() != space.dim())
    throw KreinError(ErrorCode::DimensionMismatch, "basis vectors have the wrong length");

  RealVector sv = detail::singular_values(basis);
  const Eigen::Index k = basis.cols();
  if (k > basis.rows() || sv(k - 1) <= space.tolerances().rank_cut(sv(0), std::max(basis.rows(), k)))
    throw KreinError(ErrorCode::RankDeficientBasis, "basis vectors are linearly dependent");

  const Matrix q = detail::orthonormalize(basis);
  const RealVector ev = detail::hermitian_eigenvalues(hermitian_part(q.adjoint() * space.gram() * q));
  const double zero = space.tolerances().neutral * space.gram_norm();
  int p = 0, n = 0, z = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > zero) ++p;
    else if (ev(i) < -zero) ++n;
    else ++z;
  }
  return class_from_inertia(p, n, z);
}

FundamentalDecomposition fundamental_decomposition(const GramSpace& space) {
  return {space.fund_sym(), space.canon()};
}

} // namespace kreinrange
