#pragma once

#include <optional>
#include <string>
#include <vector>

namespace kreinrange {

/// One connected piece with extended-real endpoints. Infinite endpoints are
/// always open; a single point is [a,a].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool is_empty() const;
  bool contains(double t) const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of intervals with finitely many punctured points.
///
/// The canonical form stores maximal intervals in which every isolated
/// missing point has been filled back in and listed as a puncture, so
/// R\{0} is the interval (-inf,inf) with puncture 0. Equal sets have equal
/// representations; operator== compares exactly.
class RealSet {
public:
  RealSet() = default;

  static RealSet empty() { return {}; }
  static RealSet all();
  static RealSet point(double t);
  static RealSet closed(double lo, double hi);
  static RealSet open(double lo, double hi);
  static RealSet make(double lo, double hi, bool lo_closed, bool hi_closed);
  /// Normalises an arbitrary list of pieces minus `punctures`.
  static RealSet from_parts(std::vector<Interval> pieces, const std::vector<double>& punctures = {});

  const std::vector<Interval>& intervals() const { return intervals_; }
  const std::vector<double>& punctures() const { return punctures_; }

  bool is_empty() const { return intervals_.empty(); }
  bool contains(double t) const;

  /// Drops punctures and closes every finite endpoint.
  RealSet closure() const;
  RealSet intersect(const RealSet& other) const;
  RealSet unite(const RealSet& other) const;
  RealSet remove_point(double t) const;

  /// Disjoint pieces with punctures split out, e.g. (-inf,0), (0,inf).
  std::vector<Interval> pieces() const;
  /// Points where membership changes: finite endpoints and punctures.
  std::vector<double> boundary_points() const;

  /// Distance to the closure; +inf for the empty set.
  double distance(double t) const;
  std::optional<double> infimum() const;
  std::optional<double> supremum() const;

  /// Same shape (piece count, closedness, punctures) with endpoints within tol.
  bool approx_equal(const RealSet& other, double tol) const;

  /// Interval notation over the split pieces: "(-inf,0)∪(0,inf)", "{0}", "∅".
  std::string to_string() const;

  friend bool operator==(const RealSet&, const RealSet&) = default;

private:
  std::vector<Interval> intervals_;
  std::vector<double> punctures_;
};

/// Shortest round-trip decimal form; "inf" / "-inf" for infinities.
std::string format_real(double v);

} // namespace kreinrange
