#pragma once

#include <string_view>
#include <vector>

#include "kreinrange/krein_operator.hpp"
#include "kreinrange/ranges.hpp"
#include "kreinrange/spectral.hpp"

namespace kreinrange {

/// A on K / ker A with the inner product <[x],[y]> = [Ax,y], in coordinates
/// u = C x where P = C* C. There the inner product is the standard one and
/// the induced operator is the Hermitian matrix C G^{-1} C*.
struct QuotientModel {
  Eigen::Index rank = 0;
  Matrix coord_map;  // C, rank x dim
  Matrix a_tilde;    // rank x rank, Hermitian
  RealVector spectrum;  // ascending eigenvalues of a_tilde

  /// |||[x]|||^2 = |C x|^2 = [Ax,x].
  double norm_squared(const Vector& x) const { return (coord_map * x).squaredNorm(); }
};

/// Throws ZeroOperator.
QuotientModel build_quotient(const KreinOperator& op);

struct SigmaMatch {
  std::vector<double> quotient_nonzero;  // from A-tilde
  std::vector<double> operator_nonzero;  // from a general dense eigensolver on A
  double max_relative_error = 0.0;
  bool matches = false;
};

/// Compares the nonzero spectra of A-tilde and of A, the latter computed by
/// a general complex eigensolver on the explicit matrix A.
SigmaMatch verify_sigma_match(const KreinOperator& op, const QuotientModel& qm);

struct ZeroResolvent {
  bool predicted = false;  // 0 not in sigma(A), or ker A = ker A^2
  bool observed = false;   // A-tilde invertible
  bool agree() const { return predicted == observed; }
};

ZeroResolvent zero_resolvent_criterion(const KreinOperator& op, const QuotientModel& qm, const SpectralData& sd);

enum class CorollaryCase {
  /// 0 is not an eigenvalue, or both half lines carry spectrum: min and max
  /// of sigma(A-tilde) are min and max of sigma(A).
  General,
  /// 0 isolated eigenvalue, no positive spectrum.
  NoPositive,
  /// 0 isolated eigenvalue, no negative spectrum.
  NoNegative,
  /// sigma(A) = {0}.
  ZeroOnly,
};

std::string_view to_string(CorollaryCase c);

struct WcoClosure {
  double lo = 0.0;
  double hi = 0.0;
  CorollaryCase corollary_case = CorollaryCase::General;
  /// The min/max relations expected for the case hold.
  bool case_consistent = false;
  /// closure(predict_wco) equals [lo, hi].
  bool closure_matches = false;
};

/// Requires rank >= 1 (throws ZeroOperator otherwise).
WcoClosure wco_closure_endpoints(const QuotientModel& qm, const SpectralData& sd, const Prediction& wco);

} // namespace kreinrange
