#include "wvn/closed_set.hpp"

#include <algorithm>
#include <cmath>

#include "wvn/error.hpp"

namespace wvn {

ClosedSetApprox::ClosedSetApprox(Window window, std::vector<double> points, std::vector<Interval> intervals,
                                 bool unbounded_above, bool unbounded_below)
    : window_(window),
      points_(std::move(points)),
      intervals_(std::move(intervals)),
      unbounded_above_(unbounded_above),
      unbounded_below_(unbounded_below) {
  normalize();
}

void ClosedSetApprox::normalize() {
  if (!(window_.lo <= window_.hi)) throw DomainError("window must satisfy lo <= hi");

  std::vector<Interval> clipped;
  clipped.reserve(intervals_.size());
  for (Interval iv : intervals_) {
    if (iv.lo > iv.hi) std::swap(iv.lo, iv.hi);
    iv.lo = std::max(iv.lo, window_.lo);
    iv.hi = std::min(iv.hi, window_.hi);
    if (iv.lo <= iv.hi) clipped.push_back(iv);
  }
  std::sort(clipped.begin(), clipped.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });

  std::vector<Interval> merged;
  for (const Interval& iv : clipped) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }

  std::vector<double> pts;
  std::vector<Interval> proper;
  for (const Interval& iv : merged) {
    if (iv.lo == iv.hi) {
      pts.push_back(iv.lo);
    } else {
      proper.push_back(iv);
    }
  }
  for (double p : points_) {
    if (std::isfinite(p) && window_.contains(p)) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  intervals_ = std::move(proper);
  points_.clear();
  for (double p : pts) {
    const auto it = std::upper_bound(intervals_.begin(), intervals_.end(), p,
                                     [](double x, const Interval& iv) { return x < iv.lo; });
    const bool absorbed = it != intervals_.begin() && std::prev(it)->hi >= p;
    if (!absorbed) points_.push_back(p);
  }
}

bool ClosedSetApprox::contains(double x, double tol) const {
  const auto pit = std::lower_bound(points_.begin(), points_.end(), x - tol);
  if (pit != points_.end() && *pit <= x + tol) return true;
  for (const Interval& iv : intervals_) {
    if (iv.lo - tol <= x && x <= iv.hi + tol) return true;
  }
  return false;
}

bool ClosedSetApprox::subset_of(const ClosedSetApprox& other, double tol) const {
  for (double p : points_) {
    if (!other.contains(p, tol)) return false;
  }
  for (const Interval& iv : intervals_) {
    const bool covered = std::any_of(other.intervals_.begin(), other.intervals_.end(), [&](const Interval& o) {
      return o.lo - tol <= iv.lo && iv.hi <= o.hi + tol;
    });
    if (!covered) return false;
  }
  return true;
}

bool ClosedSetApprox::approx_equal(const ClosedSetApprox& other, double tol) const {
  if (window_ != other.window_ || unbounded_above_ != other.unbounded_above_ ||
      unbounded_below_ != other.unbounded_below_) {
    return false;
  }
  if (points_.size() != other.points_.size() || intervals_.size() != other.intervals_.size()) return false;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (std::abs(points_[i] - other.points_[i]) > tol) return false;
  }
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (std::abs(intervals_[i].lo - other.intervals_[i].lo) > tol ||
        std::abs(intervals_[i].hi - other.intervals_[i].hi) > tol) {
      return false;
    }
  }
  return true;
}

ClosedSetApprox ClosedSetApprox::with_flags(bool above, bool below) const {
  ClosedSetApprox out = *this;
  out.unbounded_above_ = above;
  out.unbounded_below_ = below;
  return out;
}

ClosedSetApprox intersect(const ClosedSetApprox& a, const ClosedSetApprox& b) {
  if (a.window() != b.window()) throw DomainError("intersect: window mismatch");

  std::vector<Interval> overlaps;
  std::size_t i = 0, j = 0;
  const auto& ia = a.intervals();
  const auto& ib = b.intervals();
  while (i < ia.size() && j < ib.size()) {
    const double lo = std::max(ia[i].lo, ib[j].lo);
    const double hi = std::min(ia[i].hi, ib[j].hi);
    if (lo <= hi) overlaps.push_back({lo, hi});
    if (ia[i].hi < ib[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }

  std::vector<double> pts;
  for (double p : a.points()) {
    if (b.contains(p)) pts.push_back(p);
  }
  for (double p : b.points()) {
    if (a.contains(p)) pts.push_back(p);
  }
  return {a.window(), std::move(pts), std::move(overlaps), a.unbounded_above() && b.unbounded_above(),
          a.unbounded_below() && b.unbounded_below()};
}

ClosedSetApprox intersect_closed(std::span<const ClosedSetApprox> sets) {
  if (sets.empty()) throw DomainError("intersect_closed: empty list of sets");
  ClosedSetApprox acc = sets.front();
  for (std::size_t i = 1; i < sets.size(); ++i) acc = intersect(acc, sets[i]);
  return acc;
}

ClosedSetApprox unite(const ClosedSetApprox& a, const ClosedSetApprox& b) {
  if (a.window() != b.window()) throw DomainError("unite: window mismatch");
  std::vector<double> pts = a.points();
  pts.insert(pts.end(), b.points().begin(), b.points().end());
  std::vector<Interval> ivs = a.intervals();
  ivs.insert(ivs.end(), b.intervals().begin(), b.intervals().end());
  return {a.window(), std::move(pts), std::move(ivs), a.unbounded_above() || b.unbounded_above(),
          a.unbounded_below() || b.unbounded_below()};
}

}  // namespace wvn
