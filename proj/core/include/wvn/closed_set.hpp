#pragma once

#include <span>
#include <vector>

namespace wvn {

struct Window {
  double lo = -64.0;
  double hi = 64.0;

  static Window symmetric(double m) { return {-m, m}; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Window&, const Window&) = default;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// A closed subset of a window: finitely many points plus finitely many
// closed intervals, with flags recording whether the set continues past
// the window. Always normalized: intervals sorted, disjoint and clipped;
// points sorted, unique and outside every interval; degenerate intervals
// collapse to points.
class ClosedSetApprox {
 public:
  ClosedSetApprox() = default;
  explicit ClosedSetApprox(Window window) : window_(window) {}
  ClosedSetApprox(Window window, std::vector<double> points, std::vector<Interval> intervals,
                  bool unbounded_above = false, bool unbounded_below = false);

  static ClosedSetApprox full(Window window) { return {window, {}, {{window.lo, window.hi}}}; }

  const Window& window() const { return window_; }
  const std::vector<double>& points() const { return points_; }
  const std::vector<Interval>& intervals() const { return intervals_; }
  bool unbounded_above() const { return unbounded_above_; }
  bool unbounded_below() const { return unbounded_below_; }

  bool empty() const { return points_.empty() && intervals_.empty(); }
  bool contains(double x, double tol = 0.0) const;

  // Every point/interval of *this lies within tol of `other`.
  bool subset_of(const ClosedSetApprox& other, double tol = 0.0) const;

  // Same window, same flags, points and interval endpoints pairwise within tol.
  bool approx_equal(const ClosedSetApprox& other, double tol) const;

  ClosedSetApprox with_flags(bool above, bool below) const;

  friend bool operator==(const ClosedSetApprox&, const ClosedSetApprox&) = default;

 private:
  void normalize();

  Window window_{};
  std::vector<double> points_;
  std::vector<Interval> intervals_;
  bool unbounded_above_ = false;
  bool unbounded_below_ = false;
};

// Exact intersection of the point/interval representations; flags AND-ed.
// Throws DomainError on window mismatch.
ClosedSetApprox intersect(const ClosedSetApprox& a, const ClosedSetApprox& b);

// Iterated intersection; throws DomainError for an empty list or mismatched windows.
ClosedSetApprox intersect_closed(std::span<const ClosedSetApprox> sets);

ClosedSetApprox unite(const ClosedSetApprox& a, const ClosedSetApprox& b);

}  // namespace wvn
