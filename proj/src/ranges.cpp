#include "kreinrange/ranges.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kreinrange/detail/linalg.hpp"
#include "kreinrange/detail/random.hpp"
#include "kreinrange/error.hpp"

namespace kreinrange {

std::string_view to_string(RangeKind k) { return k == RangeKind::W ? "W" : "Wco"; }

std::string_view to_string(PieceSide s) {
  switch (s) {
    case PieceSide::PosMin: return "PosMin";
    case PieceSide::NegMax: return "NegMax";
    case PieceSide::Min: return "Min";
    case PieceSide::Max: return "Max";
  }
  return "?";
}

double w_value(const KreinOperator& op, const Vector& x) {
  const GramSpace& space = op.space();
  const double q = inner(space, x, x).real();
  if (std::abs(q) <= space.tolerances().neutral * x.squaredNorm() * space.gram_norm())
    throw KreinError(ErrorCode::NeutralVector, "[x,x] vanishes at the neutrality tolerance");
  return x.dot(op.psd_witness() * x).real() / q;
}

double wco_value(const KreinOperator& op, const Vector& x) {
  if (x.size() != op.dim()) throw KreinError(ErrorCode::DimensionMismatch, "vector has the wrong length");
  const Vector ax = op.mat() * x;
  // P is PSD, so Ax = 0 exactly when x*Px = 0.
  const double denom = x.dot(op.psd_witness() * x).real();
  const double cut = op.space().tolerances().rank_cut(op.psd_norm() * x.squaredNorm(), op.dim());
  if (denom <= cut) throw KreinError(ErrorCode::KernelVector, "Ax vanishes");
  return ax.dot(op.space().gram() * ax).real() / denom;
}

namespace {

bool in_point_spectrum(const SpectralData& sd, double v) {
  return std::any_of(sd.eigs.begin(), sd.eigs.end(),
                     [&](const Eigenvalue& e) { return std::abs(e.value - v) <= sd.cluster_tolerance; });
}

void check_hypotheses(const KreinOperator& op, bool strict) {
  if (!strict) return;
  if (op.is_zero()) throw KreinError(ErrorCode::ZeroOperator, "A = 0");
  if (!op.space().is_indefinite()) throw KreinError(ErrorCode::DefiniteSpace, "the space is definite");
}

} // namespace

Prediction predict_w(const KreinOperator& op, bool strict) { return predict_w(op, compute_spectrum(op), strict); }

Prediction predict_w(const KreinOperator& op, const SpectralData& sd, bool strict) {
  check_hypotheses(op, strict);
  if (op.is_zero()) return {RealSet::point(0.0), true};
  if (!op.space().is_indefinite()) {
    // Hilbert space (G or -G positive): the classical closed hull of the spectrum.
    const auto v = sd.values();
    return {RealSet::closed(v.front(), v.back()), true};
  }

  const SpectralConstants& k = sd.constants;
  std::vector<Interval> parts;
  auto lower = [&](double hi) {
    if (std::isfinite(hi)) parts.push_back({-kInf, hi, false, in_point_spectrum(sd, hi)});
  };
  auto upper = [&](double lo) {
    if (std::isfinite(lo)) parts.push_back({lo, kInf, in_point_spectrum(sd, lo), false});
  };

  switch (sd.zero.kernel_class) {
    case SubspaceClass::Zero:
      lower(k.mu_minus);
      upper(k.mu_plus);
      return {RealSet::from_parts(parts), false};
    case SubspaceClass::Positive:
      lower(k.mu_minus);
      upper(0.0);
      return {RealSet::from_parts(parts), false};
    case SubspaceClass::Negative:
      lower(0.0);
      upper(k.mu_plus);
      return {RealSet::from_parts(parts), false};
    case SubspaceClass::Neutral:
      return {RealSet::all().remove_point(0.0), false};
    default:
      return {RealSet::all(), false};
  }
}

Prediction predict_wco(const KreinOperator& op, bool strict) {
  return predict_wco(op, compute_spectrum(op), strict);
}

Prediction predict_wco(const KreinOperator& op, const SpectralData& sd, bool strict) {
  check_hypotheses(op, strict);
  if (op.is_zero()) return {RealSet::empty(), true};
  const bool outside = !op.space().is_indefinite();
  const SpectralConstants& k = sd.constants;
  const SubspaceClass rc = range_class(op);

  double lo = 0.0, hi = 0.0;
  if (rc == SubspaceClass::Negative) {
    lo = k.nu_minus;
    hi = k.mu_minus;
  } else if (rc == SubspaceClass::Positive) {
    lo = k.mu_plus;
    hi = k.nu_plus;
  } else {
    lo = k.nu_minus;
    hi = k.nu_plus;
  }
  // Endpoints belong to the set iff they are eigenvalues; 0 is always a
  // member when the range is not definite.
  const bool zero_member = !is_definite(rc);
  auto closed_at = [&](double v) { return in_point_spectrum(sd, v) || (v == 0.0 && zero_member); };
  RealSet s = RealSet::make(lo, hi, closed_at(lo), closed_at(hi));
  if (zero_member && lo <= 0.0 && 0.0 <= hi) s = s.unite(RealSet::point(0.0));
  return {s, outside};
}

namespace {

// Candidate vector: a uniform direction, or a point on the hyperbola
// cosh(s) x+ + sinh(s) x- through the canonical decomposition.
Vector draw_vector(detail::Rng& rng, const GramSpace& space) {
  const Eigen::Index n = space.dim();
  const Inertia in = space.inertia();
  const bool hyperbolic = space.is_indefinite() && detail::uniform(rng, 0.0, 1.0) < 0.5;
  if (!hyperbolic) {
    Vector x = detail::complex_gaussian(rng, n);
    return x / x.norm();
  }
  const double s = detail::uniform(rng, 0.0, kMaxHyperbolic);
  const bool mirrored = detail::uniform(rng, 0.0, 1.0) < 0.5;
  Vector up = detail::complex_gaussian(rng, in.positive);
  Vector um = detail::complex_gaussian(rng, in.negative);
  up /= up.norm();
  um /= um.norm();
  Vector y(n);
  y.head(in.positive) = (mirrored ? std::sinh(s) : std::cosh(s)) * up;
  y.tail(in.negative) = (mirrored ? std::cosh(s) : std::sinh(s)) * um;
  return space.canon() * y;
}

struct Admissible {
  bool ok = false;
  double value = 0.0;
};

Admissible evaluate(const KreinOperator& op, RangeKind which, const Vector& x) {
  const double norm2 = x.squaredNorm();
  if (which == RangeKind::W) {
    const double q = x.dot(op.space().gram() * x).real();
    if (std::abs(q) <= kSampleNeutralCut * norm2 * op.space().gram_norm()) return {};
    return {true, w_value(op, x)};
  }
  const double d = x.dot(op.psd_witness() * x).real();
  if (d <= kSampleKernelCut * norm2 * op.psd_norm()) return {};
  return {true, wco_value(op, x)};
}

} // namespace

RangeReport sample_range(const KreinOperator& op, RangeKind which, std::size_t n, std::uint64_t seed) {
  const SpectralData sd = compute_spectrum(op);
  return sample_range(op, which == RangeKind::W ? predict_w(op, sd) : predict_wco(op, sd), which, n, seed);
}

RangeReport sample_range(const KreinOperator& op, const Prediction& predicted, RangeKind which, std::size_t n,
                         std::uint64_t seed) {
  RangeReport rep;
  rep.predicted = predicted.set;
  rep.outside_theorem = predicted.outside_theorem;
  rep.tolerance = kSampleTolerance * std::max(1.0, op.j_norm());
  if (n == 0 || (which == RangeKind::Wco && op.is_zero())) return rep;

  auto rng = detail::make_rng(seed, which == RangeKind::W ? 0x57 : 0x5763);
  rep.samples.reserve(n);
  const std::size_t max_draws = 20 * n;
  for (std::size_t draws = 0; draws < max_draws && rep.samples.size() < n; ++draws) {
    const Vector x = draw_vector(rng, op.space());
    const Admissible a = evaluate(op, which, x);
    if (!a.ok) {
      ++rep.rejected;
      continue;
    }
    rep.samples.push_back(a.value);
    const double dist = rep.predicted.distance(a.value);
    if (dist > rep.tolerance) rep.violations.push_back({x, a.value, dist});
  }
  return rep;
}

namespace {

// Generalised Rayleigh quotient x*Nx / x*Dx on {sign * x*Dx > 0}, to be
// minimised after multiplying by `orient`.
struct Quotient {
  Matrix num;
  Matrix den;
  double sign = 1.0;
  double orient = 1.0;
  double den_cut = 0.0;

  bool admissible(const Vector& x) const {
    return sign * x.dot(den * x).real() > den_cut * x.squaredNorm();
  }
  double value(const Vector& x) const { return x.dot(num * x).real() / x.dot(den * x).real(); }
};

// Exact line search along the negative gradient.
Vector descend(const Quotient& q, Vector x, int iterations) {
  for (int it = 0; it < iterations; ++it) {
    x /= x.norm();
    const Vector nx = q.num * x;
    const Vector dx = q.den * x;
    const double a = x.dot(nx).real();
    const double e = x.dot(dx).real();
    const double rho = a / e;
    const Vector d = -q.orient * (nx - rho * dx) / e;
    if (d.norm() <= 1e-15 * (std::abs(rho) + 1.0)) break;

    const Vector nd = q.num * d;
    const Vector dd = q.den * d;
    const double b = d.dot(nx).real(), c = d.dot(nd).real();
    const double f = d.dot(dx).real(), h = d.dot(dd).real();
    // d/dalpha of (a + 2b alpha + c alpha^2) / (e + 2f alpha + h alpha^2) = 0
    const double qa = c * f - b * h, qb = c * e - a * h, qc = b * e - a * f;
    std::vector<double> roots;
    if (std::abs(qa) > 1e-300) {
      const double disc = qb * qb - 4 * qa * qc;
      if (disc >= 0) {
        const double sq = std::sqrt(disc);
        roots.push_back((-qb + sq) / (2 * qa));
        roots.push_back((-qb - sq) / (2 * qa));
      }
    } else if (std::abs(qb) > 1e-300) {
      roots.push_back(-qc / qb);
    }

    double best = q.orient * rho;
    Vector next = x;
    for (double alpha : roots) {
      if (!std::isfinite(alpha)) continue;
      const Vector y = x + alpha * d;
      if (!q.admissible(y)) continue;
      const double v = q.orient * q.value(y);
      if (v < best) {
        best = v;
        next = y;
      }
    }
    if (best >= q.orient * rho - 1e-16 * (std::abs(rho) + 1.0)) break;
    x = next;
  }
  return x / x.norm();
}

// Rayleigh quotient iteration on the pencil (N, D) compressed to the
// orthonormal columns of `basis`; keeps the best admissible iterate. For W the
// basis is the identity and the step is (A - rho)^{-1} x.
Vector polish(const Quotient& q, const Matrix& basis, Vector x, int iterations) {
  const Matrix nr = basis.adjoint() * q.num * basis;
  const Matrix dr = basis.adjoint() * q.den * basis;
  Vector z = basis.adjoint() * x;
  Vector best = x;
  double best_val = q.orient * q.value(x);
  for (int it = 0; it < iterations; ++it) {
    double rho = z.dot(nr * z).real() / z.dot(dr * z).real();
    Eigen::FullPivLU<Matrix> lu(nr - rho * dr);
    if (!lu.isInvertible()) {
      rho += 1e-13 * std::max(1.0, std::abs(rho));
      lu.compute(nr - rho * dr);
    }
    Vector y = lu.solve(dr * z);
    if (!y.allFinite() || y.norm() == 0.0) break;
    z = y / y.norm();
    const Vector cand = basis * z;
    if (!q.admissible(cand)) break;
    const double v = q.orient * q.value(cand);
    if (v < best_val) {
      const bool settled = best_val - v <= 1e-15 * (std::abs(v) + 1.0);
      best_val = v;
      best = cand;
      if (settled) break;
    }
  }
  return best;
}

} // namespace

double estimate_endpoint(const KreinOperator& op, RangeKind which, PieceSide side, std::uint64_t seed) {
  const GramSpace& space = op.space();
  Quotient q;
  Matrix basis;
  if (which == RangeKind::W) {
    if (side != PieceSide::PosMin && side != PieceSide::NegMax)
      throw std::invalid_argument("W pieces are PosMin and NegMax");
    const bool pos = side == PieceSide::PosMin;
    if ((pos ? space.inertia().positive : space.inertia().negative) == 0)
      throw KreinError(ErrorCode::EmptyPiece, "no vectors of the required sign");
    q.num = op.psd_witness();
    q.den = space.gram();
    q.sign = pos ? 1.0 : -1.0;
    q.orient = pos ? 1.0 : -1.0;
    q.den_cut = kSampleNeutralCut * space.gram_norm();
    basis = Matrix::Identity(op.dim(), op.dim());
  } else {
    if (side != PieceSide::Min && side != PieceSide::Max)
      throw std::invalid_argument("W_co pieces are Min and Max");
    if (op.is_zero()) throw KreinError(ErrorCode::EmptyPiece, "A = 0");
    q.num = hermitian_part(op.psd_witness() * space.gram_inverse() * op.psd_witness());
    q.den = op.psd_witness();
    q.orient = side == PieceSide::Min ? 1.0 : -1.0;
    q.den_cut = kSampleNeutralCut * op.psd_norm();
    // both forms vanish on ker P, so the iteration runs on its complement
    basis = detail::split_psd(op.psd_witness(), space.tolerances().rank_cut(op.psd_norm(), op.dim())).range_vectors;
  }

  constexpr int kDraws = 2000;
  constexpr std::size_t kStarts = 6;
  auto rng = detail::make_rng(seed, 0x656e64 + static_cast<std::uint64_t>(side));
  std::vector<std::pair<double, Vector>> pool;
  for (int i = 0; i < kDraws; ++i) {
    Vector x = draw_vector(rng, space);
    if (q.admissible(x)) pool.emplace_back(q.orient * q.value(x), std::move(x));
  }
  if (pool.empty()) throw KreinError(ErrorCode::EmptyPiece, "no admissible vector was drawn");
  const std::size_t starts = std::min(kStarts, pool.size());
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(starts), pool.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });

  double best = pool.front().first;
  for (std::size_t i = 0; i < starts; ++i) {
    Vector x = descend(q, pool[i].second, 400);
    best = std::min(best, q.orient * q.value(x));
    x = polish(q, basis, x, 30);
    best = std::min(best, q.orient * q.value(x));
  }
  return q.orient * best;
}

std::optional<double> predicted_endpoint(const RealSet& predicted, RangeKind which, PieceSide side) {
  if (which == RangeKind::W) {
    if (side == PieceSide::PosMin) return predicted.intersect(RealSet::open(0.0, kInf)).infimum();
    if (side == PieceSide::NegMax) return predicted.intersect(RealSet::open(-kInf, 0.0)).supremum();
    return std::nullopt;
  }
  if (side == PieceSide::Min) return predicted.infimum();
  if (side == PieceSide::Max) return predicted.supremum();
  return std::nullopt;
}

std::vector<Endpoint> finite_endpoints(const RealSet& predicted, RangeKind which) {
  std::vector<Endpoint> out;
  for (const auto& iv : predicted.intervals()) {
    if (which == RangeKind::W) {
      if (std::isfinite(iv.lo) && iv.lo >= 0.0) out.push_back({PieceSide::PosMin, iv.lo});
      if (std::isfinite(iv.hi) && iv.hi <= 0.0) out.push_back({PieceSide::NegMax, iv.hi});
    } else {
      if (std::isfinite(iv.lo)) out.push_back({PieceSide::Min, iv.lo});
      if (std::isfinite(iv.hi)) out.push_back({PieceSide::Max, iv.hi});
    }
  }
  return out;
}

} // namespace kreinrange
