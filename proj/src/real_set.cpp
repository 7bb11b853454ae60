#include "kreinrange/real_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace kreinrange {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

Interval tidy(Interval iv) {
  if (std::isinf(iv.lo)) iv.lo_closed = false;
  if (std::isinf(iv.hi)) iv.hi_closed = false;
  return iv;
}

// Sorted, pairwise disjoint, non-touching pieces.
std::vector<Interval> merge_pieces(std::vector<Interval> pieces) {
  std::vector<Interval> kept;
  for (auto& p : pieces) {
    p = tidy(p);
    if (!p.is_empty()) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Interval> out;
  for (const auto& p : kept) {
    if (!out.empty()) {
      Interval& cur = out.back();
      bool joins = p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_closed || p.lo_closed));
      if (joins) {
        if (p.hi > cur.hi) {
          cur.hi = p.hi;
          cur.hi_closed = p.hi_closed;
        } else if (p.hi == cur.hi) {
          cur.hi_closed = cur.hi_closed || p.hi_closed;
        }
        continue;
      }
    }
    out.push_back(p);
  }
  return out;
}

Interval intersect_pieces(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) { r.lo = a.lo; r.lo_closed = a.lo_closed; }
  else if (b.lo > a.lo) { r.lo = b.lo; r.lo_closed = b.lo_closed; }
  else { r.lo = a.lo; r.lo_closed = a.lo_closed && b.lo_closed; }
  if (a.hi < b.hi) { r.hi = a.hi; r.hi_closed = a.hi_closed; }
  else if (b.hi < a.hi) { r.hi = b.hi; r.hi_closed = b.hi_closed; }
  else { r.hi = a.hi; r.hi_closed = a.hi_closed && b.hi_closed; }
  return r;
}

} // namespace

bool Interval::is_empty() const {
  if (lo > hi) return true;
  if (lo == hi) return std::isinf(lo) || !(lo_closed && hi_closed);
  return false;
}

bool Interval::contains(double t) const {
  if (t < lo || t > hi) return false;
  if (t == lo && !lo_closed) return false;
  if (t == hi && !hi_closed) return false;
  return true;
}

RealSet RealSet::all() { return make(-kInfinity, kInfinity, false, false); }
RealSet RealSet::point(double t) { return make(t, t, true, true); }
RealSet RealSet::closed(double lo, double hi) { return make(lo, hi, true, true); }
RealSet RealSet::open(double lo, double hi) { return make(lo, hi, false, false); }

RealSet RealSet::make(double lo, double hi, bool lo_closed, bool hi_closed) {
  return from_parts({Interval{lo, hi, lo_closed, hi_closed}});
}

RealSet RealSet::from_parts(std::vector<Interval> pieces, const std::vector<double>& punctures) {
  std::vector<Interval> merged = merge_pieces(std::move(pieces));

  // Remove punctures by splitting.
  for (double t : punctures) {
    std::vector<Interval> next;
    for (const auto& p : merged) {
      if (!p.contains(t)) {
        next.push_back(p);
        continue;
      }
      Interval left{p.lo, t, p.lo_closed, false};
      Interval right{t, p.hi, false, p.hi_closed};
      if (!left.is_empty()) next.push_back(left);
      if (!right.is_empty()) next.push_back(right);
    }
    merged = std::move(next);
  }

  // Rejoin open-open neighbours across a single missing point.
  RealSet s;
  for (const auto& p : merged) {
    if (!s.intervals_.empty()) {
      Interval& cur = s.intervals_.back();
      if (cur.hi == p.lo && !cur.hi_closed && !p.lo_closed && std::isfinite(p.lo)) {
        s.punctures_.push_back(p.lo);
        cur.hi = p.hi;
        cur.hi_closed = p.hi_closed;
        continue;
      }
    }
    s.intervals_.push_back(p);
  }
  return s;
}

bool RealSet::contains(double t) const {
  if (std::find(punctures_.begin(), punctures_.end(), t) != punctures_.end()) return false;
  return std::any_of(intervals_.begin(), intervals_.end(), [&](const Interval& iv) { return iv.contains(t); });
}

std::vector<Interval> RealSet::pieces() const {
  std::vector<Interval> out;
  std::size_t k = 0;
  for (const auto& iv : intervals_) {
    Interval cur = iv;
    while (k < punctures_.size() && punctures_[k] < iv.hi) {
      double t = punctures_[k++];
      out.push_back({cur.lo, t, cur.lo_closed, false});
      cur.lo = t;
      cur.lo_closed = false;
    }
    out.push_back(cur);
  }
  return out;
}

RealSet RealSet::closure() const {
  std::vector<Interval> closed;
  for (auto iv : intervals_) {
    iv.lo_closed = true;
    iv.hi_closed = true;
    closed.push_back(tidy(iv));
  }
  return from_parts(std::move(closed));
}

RealSet RealSet::intersect(const RealSet& other) const {
  std::vector<Interval> out;
  for (const auto& a : pieces())
    for (const auto& b : other.pieces()) out.push_back(intersect_pieces(a, b));
  return from_parts(std::move(out));
}

RealSet RealSet::unite(const RealSet& other) const {
  std::vector<Interval> all = pieces();
  for (const auto& b : other.pieces()) all.push_back(b);
  return from_parts(std::move(all));
}

RealSet RealSet::remove_point(double t) const { return from_parts(pieces(), {t}); }

std::vector<double> RealSet::boundary_points() const {
  std::vector<double> out;
  for (const auto& iv : intervals_) {
    if (std::isfinite(iv.lo)) out.push_back(iv.lo);
    if (std::isfinite(iv.hi) && iv.hi != iv.lo) out.push_back(iv.hi);
  }
  out.insert(out.end(), punctures_.begin(), punctures_.end());
  std::sort(out.begin(), out.end());
  return out;
}

double RealSet::distance(double t) const {
  double best = kInfinity;
  for (const auto& iv : intervals_) {
    if (t < iv.lo) best = std::min(best, iv.lo - t);
    else if (t > iv.hi) best = std::min(best, t - iv.hi);
    else return 0.0;
  }
  return best;
}

std::optional<double> RealSet::infimum() const {
  if (intervals_.empty()) return std::nullopt;
  return intervals_.front().lo;
}

std::optional<double> RealSet::supremum() const {
  if (intervals_.empty()) return std::nullopt;
  return intervals_.back().hi;
}

bool RealSet::approx_equal(const RealSet& other, double tol) const {
  auto close = [tol](double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::abs(a - b) <= tol;
  };
  if (intervals_.size() != other.intervals_.size() || punctures_.size() != other.punctures_.size())
    return false;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& a = intervals_[i];
    const auto& b = other.intervals_[i];
    if (a.lo_closed != b.lo_closed || a.hi_closed != b.hi_closed) return false;
    if (!close(a.lo, b.lo) || !close(a.hi, b.hi)) return false;
  }
  for (std::size_t i = 0; i < punctures_.size(); ++i)
    if (!close(punctures_[i], other.punctures_[i])) return false;
  return true;
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string RealSet::to_string() const {
  if (intervals_.empty()) return "∅";
  std::string out;
  for (const auto& p : pieces()) {
    if (!out.empty()) out += "∪";
    if (p.lo == p.hi) {
      out += "{" + format_real(p.lo) + "}";
      continue;
    }
    out += p.lo_closed ? "[" : "(";
    out += format_real(p.lo) + "," + format_real(p.hi);
    out += p.hi_closed ? "]" : ")";
  }
  return out;
}

} // namespace kreinrange
