#pragma once

#include <string_view>
#include <vector>

#include "kreinrange/krein_operator.hpp"
#include "kreinrange/real_set.hpp"

namespace kreinrange {

/// PlusType / MinusType for definite spectral subspaces; ZeroPoint labels the
/// eigenvalue 0 in a spectrum listing; Critical is the answer of sign_type()
/// when the root subspace at 0 is not definite.
enum class SignType { PlusType, MinusType, ZeroPoint, Critical };

std::string_view to_string(SignType t);

struct Eigenvalue {
  double value = 0.0;
  int multiplicity = 0;
  SignType sign_type = SignType::ZeroPoint;
  /// Eigenspace basis for value != 0, ker A^2 for the eigenvalue 0.
  Matrix vectors;
};

struct ZeroStructure {
  Matrix ker_basis;
  Matrix ker2_basis;
  int chain_count = 0;
  SubspaceClass kernel_class = SubspaceClass::Zero;
  int s0_dim = 0;
  int s0_plus_dim = 0;
  int s0_minus_dim = 0;
};

/// mu_-, mu_+ are the inner and nu_-, nu_+ the outer ends of the negative and
/// positive spectrum, with -inf/+inf and 0 standing in for empty parts.
struct SpectralConstants {
  double mu_minus = 0.0;
  double mu_plus = 0.0;
  double nu_minus = 0.0;
  double nu_plus = 0.0;
};

struct SpectralData {
  std::vector<Eigenvalue> eigs;  // ascending
  ZeroStructure zero;
  SpectralConstants constants;
  double cluster_tolerance = 0.0;

  bool has_zero() const { return zero.s0_dim > 0; }
  bool has_positive() const { return zero.s0_plus_dim > 0; }
  bool has_negative() const { return zero.s0_minus_dim > 0; }
  /// ker A = ker A^2.
  bool zero_semisimple() const { return zero.chain_count == 0; }
  /// Nonzero eigenvalues repeated by multiplicity, ascending.
  std::vector<double> nonzero_values() const;
  /// Distinct eigenvalues including 0 when present.
  std::vector<double> values() const;
};

/// Real spectrum through the Hermitian reduction: with P = C* C the nonzero
/// eigenvalues of A are those of M = C G^{-1} C*, and M u = lambda u gives
/// the eigenvector G^{-1} C* u / lambda. Throws NumericalBreakdown when
/// eigenvalues sit in the ambiguous band between tau_cluster and
/// 10 tau_cluster apart (or from zero).
SpectralData compute_spectrum(const KreinOperator& op);

SpectralConstants spectral_constants(const SpectralData& sd);

/// E(delta), the sum of the eigenprojections for eigenvalues in delta. Each
/// nonzero eigenprojection is V (V* G V)^{-1} V* G and the zero part is the
/// complement I - sum of the nonzero ones. Throws BoundaryEigenvalue when an
/// eigenvalue lies within tau_cluster of a boundary point of delta.
Matrix spectral_projector(const KreinOperator& op, const RealSet& delta);
Matrix spectral_projector(const SpectralData& sd, const KreinOperator& op, const RealSet& delta);

/// Throws NotAnEigenvalue.
SignType sign_type(const KreinOperator& op, double lambda);

} // namespace kreinrange
