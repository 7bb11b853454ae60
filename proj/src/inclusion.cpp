#include "kreinrange/inclusion.hpp"

#include <algorithm>
#include <cmath>

namespace kreinrange {

std::string_view to_string(InclusionCase c) { return c == InclusionCase::Exception ? "Exception" : "General"; }

InclusionClass classify_inclusion_case(const KreinOperator& op, const SpectralData& sd) {
  InclusionClass out;
  // Every point of a finite spectrum is isolated.
  if (sd.has_zero() && sd.zero_semisimple() && (!sd.has_positive() || !sd.has_negative()))
    out.case_tag = InclusionCase::Exception;
  out.degenerate_flag = sd.zero.kernel_class == SubspaceClass::Neutral && !sd.zero_semisimple() &&
                        !is_definite(range_class(op));
  return out;
}

InclusionVerdict verify_spectral_inclusion(const KreinOperator& op) {
  const SpectralData sd = compute_spectrum(op);
  return verify_spectral_inclusion(op, sd, predict_w(op, sd), predict_wco(op, sd));
}

InclusionVerdict verify_spectral_inclusion(const KreinOperator& op, const SpectralData& sd, const Prediction& w,
                                           const Prediction& wco) {
  InclusionVerdict v;
  v.classification = classify_inclusion_case(op, sd);
  v.target_set = w.set.intersect(wco.set).closure();
  const RealSet w_closure = w.set.closure();

  const bool zero_required =
      v.classification.case_tag == InclusionCase::General && !v.classification.degenerate_flag;
  v.holds = true;
  v.w_closure_holds = true;
  for (double lambda : sd.values()) {
    const double tol = kInclusionTolerance * std::max(1.0, std::abs(lambda));
    SpectrumCheck c;
    c.lambda = lambda;
    c.distance = v.target_set.distance(lambda);
    c.member = c.distance <= tol;
    c.required = lambda != 0.0 || zero_required;
    if (c.required && !c.member) v.holds = false;
    if (lambda == 0.0 && !c.member && v.classification.degenerate_flag) v.degenerate_discrepancy = true;
    if (w_closure.distance(lambda) > tol) v.w_closure_holds = false;
    v.spectrum_checked.push_back(c);
  }
  v.holds = v.holds && v.w_closure_holds;
  return v;
}

} // namespace kreinrange
