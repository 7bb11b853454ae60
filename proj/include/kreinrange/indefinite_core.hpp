#pragma once

#include <optional>
#include <string_view>

#include "kreinrange/types.hpp"

namespace kreinrange {

/// Numerical thresholds shared by every module. A space carries its own copy
/// so that operators, spectra and predictions built on it agree on where
/// "zero" is.
struct Tolerances {
  /// Relative rank cut. Zero selects the default 64 * eps * dim.
  double rank_rel = 0.0;
  /// |[x,x]| <= neutral * |x|^2 * |G| counts as neutral.
  double neutral = 1e-10;
  /// G*A may have eigenvalues down to -psd * |G*A|.
  double psd = 1e-10;
  /// Eigenvalues closer than cluster * max(1, |A|_J) are one eigenvalue.
  double cluster = 1e-7;

  double rank_cut(double sigma_max, Eigen::Index dim) const;
};

struct Inertia {
  int positive = 0;
  int negative = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

enum class VectorClass { Positive, Negative, Neutral, Zero };

enum class SubspaceClass {
  Zero,
  Positive,
  Negative,
  Neutral,
  NonNegDegenerate,
  NonPosDegenerate,
  Indefinite,
};

std::string_view to_string(VectorClass c);
std::string_view to_string(SubspaceClass c);
std::optional<SubspaceClass> subspace_class_from_string(std::string_view name);

/// Positive or Negative. The zero subspace is not definite here; callers that
/// need the paper-style convention ({0} is positive, negative and neutral)
/// test for Zero explicitly.
constexpr bool is_definite(SubspaceClass c) {
  return c == SubspaceClass::Positive || c == SubspaceClass::Negative;
}

/// Tag from the inertia (p, n, z) of a compressed Gram matrix.
SubspaceClass class_from_inertia(int positive, int negative, int zero);

/// Finite-dimensional Krein space C^n with [x,y] = y* G x.
///
/// Besides G the space keeps the Hermitian eigendecomposition G = V L V*,
/// from which the canonical congruence S = V |L|^{-1/2} (positive squares
/// first) and the fundamental symmetry J = V sign(L) V* are derived. The
/// Hilbert inner product induced by J is (x,y)_J = [Jx,y] = y* |G| x.
class GramSpace {
public:
  Eigen::Index dim() const { return gram_.rows(); }
  const Matrix& gram() const { return gram_; }
  const Matrix& gram_inverse() const { return gram_inv_; }
  Inertia inertia() const { return inertia_; }
  /// S with S* G S = diag(+1, ..., -1, ...).
  const Matrix& canon() const { return canon_; }
  const Matrix& canon_inverse() const { return canon_inv_; }
  /// J in standard coordinates; J = J* = J^{-1} and G J = |G| > 0.
  const Matrix& fund_sym() const { return fund_sym_; }
  /// |G| = G J, the Gram matrix of the J-inner product.
  const Matrix& hilbert_gram() const { return hilbert_gram_; }
  double gram_norm() const { return gram_norm_; }
  const Tolerances& tolerances() const { return tol_; }

  bool is_indefinite() const { return inertia_.positive > 0 && inertia_.negative > 0; }

  /// Signature vector (+1 then -1) of the canonical coordinates.
  RealVector signature() const;

  double j_norm(const Vector& x) const;
  /// Operator norm of m with respect to the J-norm.
  double j_operator_norm(const Matrix& m) const;

private:
  friend GramSpace build_space(const Matrix& g, const Tolerances& tol);

  Matrix gram_;
  Matrix gram_inv_;
  Inertia inertia_;
  Matrix canon_;
  Matrix canon_inv_;
  Matrix fund_sym_;
  Matrix hilbert_gram_;
  double gram_norm_ = 0.0;
  Tolerances tol_;
};

/// Validates G and builds the canonical decomposition.
/// Throws NotHermitian or Singular.
GramSpace build_space(const Matrix& g, const Tolerances& tol = {});

/// [x,y] = y* G x. Throws DimensionMismatch.
Complex inner(const GramSpace& space, const Vector& x, const Vector& y);

VectorClass classify_vector(const GramSpace& space, const Vector& x);

/// Classifies span(basis columns). Throws RankDeficientBasis if the columns
/// are dependent.
SubspaceClass classify_subspace(const GramSpace& space, const Matrix& basis);

struct FundamentalDecomposition {
  Matrix symmetry;  // J
  Matrix canon;     // S
};

FundamentalDecomposition fundamental_decomposition(const GramSpace& space);

} // namespace kreinrange
