#include "kreinrange/quotient.hpp"

#include <algorithm>
#include <cmath>

#include "kreinrange/detail/linalg.hpp"
#include "kreinrange/error.hpp"

namespace kreinrange {

std::string_view to_string(CorollaryCase c) {
  switch (c) {
    case CorollaryCase::General: return "General";
    case CorollaryCase::NoPositive: return "NoPositive";
    case CorollaryCase::NoNegative: return "NoNegative";
    case CorollaryCase::ZeroOnly: return "ZeroOnly";
  }
  return "?";
}

QuotientModel build_quotient(const KreinOperator& op) {
  if (op.is_zero()) throw KreinError(ErrorCode::ZeroOperator, "the quotient of A = 0 is trivial");
  QuotientModel qm;
  qm.rank = op.rank();
  qm.coord_map = op.range_factor();
  qm.a_tilde = hermitian_part(qm.coord_map * op.space().gram_inverse() * qm.coord_map.adjoint());
  qm.spectrum = detail::hermitian_eigenvalues(qm.a_tilde);
  return qm;
}

SigmaMatch verify_sigma_match(const KreinOperator& op, const QuotientModel& qm) {
  const double zero = op.cluster_tolerance();
  SigmaMatch m;
  for (Eigen::Index i = 0; i < qm.spectrum.size(); ++i)
    if (std::abs(qm.spectrum(i)) > zero) m.quotient_nonzero.push_back(qm.spectrum(i));

  Eigen::ComplexEigenSolver<Matrix> ces(op.mat(), false);
  for (Eigen::Index i = 0; i < ces.eigenvalues().size(); ++i) {
    const Complex z = ces.eigenvalues()(i);
    if (std::abs(z) > zero) m.operator_nonzero.push_back(z.real());
  }
  std::sort(m.quotient_nonzero.begin(), m.quotient_nonzero.end());
  std::sort(m.operator_nonzero.begin(), m.operator_nonzero.end());

  if (m.quotient_nonzero.size() != m.operator_nonzero.size()) {
    m.max_relative_error = kInf;
    return m;
  }
  for (std::size_t i = 0; i < m.quotient_nonzero.size(); ++i) {
    const double a = m.quotient_nonzero[i], b = m.operator_nonzero[i];
    m.max_relative_error = std::max(m.max_relative_error, std::abs(a - b) / std::max(1.0, std::abs(a)));
  }
  m.matches = m.max_relative_error <= 1e-9;
  return m;
}

ZeroResolvent zero_resolvent_criterion(const KreinOperator& op, const QuotientModel& qm, const SpectralData& sd) {
  ZeroResolvent z;
  z.predicted = !sd.has_zero() || sd.zero_semisimple();
  z.observed = qm.spectrum.size() > 0 && qm.spectrum.cwiseAbs().minCoeff() > op.cluster_tolerance();
  return z;
}

WcoClosure wco_closure_endpoints(const QuotientModel& qm, const SpectralData& sd, const Prediction& wco) {
  if (qm.rank == 0) throw KreinError(ErrorCode::ZeroOperator, "empty quotient");
  const double tol = sd.cluster_tolerance;
  WcoClosure out;
  out.lo = qm.spectrum(0);
  out.hi = qm.spectrum(qm.spectrum.size() - 1);

  const auto v = sd.values();
  const double min_a = v.front(), max_a = v.back();
  const auto near = [tol](double a, double b) { return std::abs(a - b) <= tol; };
  const bool rule_a = near(out.lo, min_a);
  const bool rule_b = near(out.hi, max_a);
  const bool chains = !sd.zero_semisimple();

  if (!sd.has_zero() || (sd.has_positive() && sd.has_negative())) {
    out.corollary_case = CorollaryCase::General;
    out.case_consistent = rule_a && rule_b;
  } else if (!sd.has_positive() && sd.has_negative()) {
    out.corollary_case = CorollaryCase::NoPositive;
    out.case_consistent = rule_a && (chains ? rule_b : near(out.hi, sd.constants.mu_minus));
  } else if (sd.has_positive() && !sd.has_negative()) {
    out.corollary_case = CorollaryCase::NoNegative;
    out.case_consistent = rule_b && (chains ? rule_a : near(out.lo, sd.constants.mu_plus));
  } else {
    out.corollary_case = CorollaryCase::ZeroOnly;
    // A != 0 here, so ker A != ker A^2 and W_co = {0}.
    out.case_consistent = chains && near(out.lo, 0.0) && near(out.hi, 0.0);
  }

  out.closure_matches = wco.set.closure().approx_equal(RealSet::closed(out.lo, out.hi), tol);
  return out;
}

} // namespace kreinrange
