#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "kreinrange/krein_operator.hpp"
#include "kreinrange/real_set.hpp"
#include "kreinrange/spectral.hpp"

namespace kreinrange {

enum class RangeKind { W, Wco };

/// Extremes of the convex pieces. For W these are
///   PosMin = inf { [Ax,x] : [x,x] = 1 },  NegMax = sup { -[Ax,x] : [x,x] = -1 };
/// for Wco, Min and Max of the whole set.
enum class PieceSide { PosMin, NegMax, Min, Max };

std::string_view to_string(RangeKind k);
std::string_view to_string(PieceSide s);

/// [Ax,x] / [x,x]. Throws NeutralVector.
double w_value(const KreinOperator& op, const Vector& x);

/// [Ax,Ax] / [Ax,x]. Throws KernelVector.
double wco_value(const KreinOperator& op, const Vector& x);

struct Prediction {
  RealSet set;
  /// Set when G is definite or A = 0, where the closed forms come from the
  /// degenerate-input policy rather than the theorems.
  bool outside_theorem = false;
};

/// Closed form for W(A), branching on the kernel class.
/// In strict mode throws DefiniteSpace / ZeroOperator instead of applying
/// the degenerate-input policy.
Prediction predict_w(const KreinOperator& op, const SpectralData& sd, bool strict = false);
Prediction predict_w(const KreinOperator& op, bool strict = false);

/// Closed form for W_co(A), branching on the range class.
Prediction predict_wco(const KreinOperator& op, const SpectralData& sd, bool strict = false);
Prediction predict_wco(const KreinOperator& op, bool strict = false);

struct Violation {
  Vector x;
  double value = 0.0;
  double distance = 0.0;
};

struct RangeReport {
  RealSet predicted;
  bool outside_theorem = false;
  std::vector<double> samples;
  std::vector<Violation> violations;
  std::size_t rejected = 0;
  /// Distance tolerance used to flag violations.
  double tolerance = 0.0;
};

/// Sampling-rejection threshold |[x,x]| > 1e-8 |x|^2 |G|.
inline constexpr double kSampleNeutralCut = 1e-8;
/// W_co samples need [Ax,x] > 1e-6 |P| |x|^2.
inline constexpr double kSampleKernelCut = 1e-6;
/// Violation distance, scaled by max(1, |A|_J).
inline constexpr double kSampleTolerance = 1e-8;
/// Largest hyperbolic parameter of the stratified sampler.
inline constexpr double kMaxHyperbolic = 10.0;

/// n admissible values of the chosen range. Half of the draws are uniform
/// directions, half are x = cosh(s) x+ + sinh(s) x- (or the mirrored form)
/// along the fundamental decomposition with s uniform in [0, 10], which
/// reaches the near-neutral vectors where |W| is large. Each value is checked
/// against the prediction. Deterministic in `seed`.
RangeReport sample_range(const KreinOperator& op, RangeKind which, std::size_t n, std::uint64_t seed);
RangeReport sample_range(const KreinOperator& op, const Prediction& predicted, RangeKind which, std::size_t n,
                         std::uint64_t seed);

/// Numerical extremum of a convex piece from sampling plus local
/// optimisation (exact line search along the gradient, then Rayleigh
/// quotient iteration). Uses A and G only; never the closed forms.
/// Throws EmptyPiece when the piece has no admissible vectors.
double estimate_endpoint(const KreinOperator& op, RangeKind which, PieceSide side, std::uint64_t seed = 0);

/// The value estimate_endpoint should approach according to a prediction.
std::optional<double> predicted_endpoint(const RealSet& predicted, RangeKind which, PieceSide side);

struct Endpoint {
  PieceSide side;
  double value;
};

/// Finite interval endpoints of a prediction, tagged with the piece they bound.
std::vector<Endpoint> finite_endpoints(const RealSet& predicted, RangeKind which);

} // namespace kreinrange
