#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kreinrange/indefinite_core.hpp"

namespace kreinrange {

/// A non-negative operator A on a GramSpace: G*A is Hermitian positive
/// semidefinite. The factorisation P = G*A = C* C (C = Sigma^{1/2} U* over
/// the eigenvalues of P above the rank cut) is computed once here; ker A is
/// ker P and every other module reuses the same cut.
class KreinOperator {
public:
  const GramSpace& space() const { return space_; }
  Eigen::Index dim() const { return space_.dim(); }
  const Matrix& mat() const { return mat_; }
  /// P = G*A.
  const Matrix& psd_witness() const { return psd_; }
  double psd_norm() const { return psd_norm_; }
  double j_norm() const { return j_norm_; }

  Eigen::Index rank() const { return factor_.rows(); }
  bool is_zero() const { return rank() == 0; }
  /// Orthonormal basis of ker A (= ker P).
  const Matrix& kernel_basis() const { return kernel_; }
  /// C with P = C* C, rank x dim.
  const Matrix& range_factor() const { return factor_; }
  /// Basis of ran A, the columns of G^{-1} U.
  const Matrix& range_basis() const { return range_; }

  /// Clustering threshold tau_cluster * max(1, |A|_J).
  double cluster_tolerance() const;

private:
  friend KreinOperator build_operator(const GramSpace& space, const Matrix& a);

  explicit KreinOperator(GramSpace space) : space_(std::move(space)) {}

  GramSpace space_;
  Matrix mat_;
  Matrix psd_;
  double psd_norm_ = 0.0;
  double j_norm_ = 0.0;
  Matrix kernel_;
  Matrix factor_;
  Matrix range_;
};

/// Throws DimensionMismatch, NotSelfadjoint or NotNonNegative.
KreinOperator build_operator(const GramSpace& space, const Matrix& a);

/// G^{-1} M* G.
Matrix krein_adjoint(const GramSpace& space, const Matrix& m);

struct Shifted {
  Matrix mat;
  bool is_nonnegative = false;
};

/// A - t*I, and whether G*(A - t*I) is positive semidefinite at tau_psd.
Shifted shifted(const KreinOperator& op, double t);

SubspaceClass kernel_class(const KreinOperator& op);
SubspaceClass range_class(const KreinOperator& op);

/// Random operator whose kernel and range classify as requested. The pair is
/// assembled from 1x1 definite blocks and 2x2 neutral Jordan blocks in
/// canonical coordinates and then moved by a random congruence
/// G <- S* G0 S, A <- S^{-1} A0 S. The result always lives in an indefinite
/// space. Deterministic in `seed`; throws Unachievable.
KreinOperator generate_case(Eigen::Index dim, SubspaceClass kernel, SubspaceClass range,
                            std::uint64_t seed, const Tolerances& tol = {});

bool is_achievable(Eigen::Index dim, SubspaceClass kernel, SubspaceClass range);

/// Every (kernel, range) combination generate_case can realise with A != 0.
std::vector<std::pair<SubspaceClass, SubspaceClass>> achievable_classes(Eigen::Index dim);

/// Operator on build_space(S* G S) with matrix S^{-1} A S.
/// Throws IllConditioned when cond(S) exceeds 1e8.
KreinOperator congruence_transform(const KreinOperator& op, const Matrix& s);

} // namespace kreinrange
