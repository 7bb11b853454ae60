#pragma once

#include <string_view>
#include <vector>

#include "kreinrange/ranges.hpp"
#include "kreinrange/spectral.hpp"

namespace kreinrange {

/// Exception: 0 is an eigenvalue with ker A = ker A^2 and one half line
/// carries no spectrum, so only sigma(A)\{0} must lie in
/// closure(W ∩ W_co). General: all of sigma(A) must.
enum class InclusionCase { Exception, General };

std::string_view to_string(InclusionCase c);

struct InclusionClass {
  InclusionCase case_tag = InclusionCase::General;
  /// ker A neutral with ker A != ker A^2 and ran A not definite. On these
  /// instances the full inclusion is reported, never asserted: the 2x2
  /// nilpotent example (W = R\{0}, W_co = {0}) already violates it.
  bool degenerate_flag = false;
};

InclusionClass classify_inclusion_case(const KreinOperator& op, const SpectralData& sd);

struct SpectrumCheck {
  double lambda = 0.0;
  bool member = false;
  double distance = 0.0;
  bool required = false;
};

struct InclusionVerdict {
  InclusionClass classification;
  /// closure(predict_w ∩ predict_wco)
  RealSet target_set;
  std::vector<SpectrumCheck> spectrum_checked;
  /// Every eigenvalue lies in closure(predict_w).
  bool w_closure_holds = false;
  /// 0 in sigma(A) but not in the target on a flagged instance.
  bool degenerate_discrepancy = false;
  bool holds = false;
};

/// Membership tolerance 1e-9 * max(1, |lambda|).
inline constexpr double kInclusionTolerance = 1e-9;

InclusionVerdict verify_spectral_inclusion(const KreinOperator& op);
InclusionVerdict verify_spectral_inclusion(const KreinOperator& op, const SpectralData& sd, const Prediction& w,
                                           const Prediction& wco);

} // namespace kreinrange
