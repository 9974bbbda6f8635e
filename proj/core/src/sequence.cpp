#include "wvn/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wvn/error.hpp"

namespace wvn {

namespace {

constexpr std::size_t kMaxProgressionPoints = 1'000'000;

// A declared target: a point (lo == hi) or an interval.
struct Target {
  double lo, hi;
  double distance(double v) const { return std::max({0.0, lo - v, v - hi}); }
};

std::string describe(const Target& t) {
  std::ostringstream os;
  os.precision(17);
  if (t.lo == t.hi) {
    os << "point " << t.lo;
  } else {
    os << "interval [" << t.lo << ", " << t.hi << "]";
  }
  return os.str();
}

}  // namespace

ClosedSetApprox AccumulationSet::materialize(Window window) const {
  std::vector<double> pts;
  for (double p : points) {
    if (window.contains(p)) pts.push_back(p);
  }
  for (const Progression& pr : progressions) {
    if (pr.step == 0.0 || !std::isfinite(pr.step)) {
      if (window.contains(pr.start)) pts.push_back(pr.start);
      continue;
    }
    // First j >= 0 with start + j*step inside the window, then walk until it leaves.
    const double bound = pr.step > 0 ? window.lo : window.hi;
    double j0 = std::ceil((bound - pr.start) / pr.step);
    if (j0 < 0 || !std::isfinite(j0)) j0 = 0;
    for (std::size_t i = 0; i < kMaxProgressionPoints; ++i) {
      const double v = pr.start + (j0 + static_cast<double>(i)) * pr.step;
      if (pr.step > 0 ? v > window.hi : v < window.lo) break;
      if (window.contains(v)) pts.push_back(v);
    }
  }
  return {window, std::move(pts), intervals};
}

EigenvalueSequence::EigenvalueSequence(std::vector<double> prefix, GenExpr generator, TailMeta meta,
                                       std::string label)
    : prefix_(std::move(prefix)), generator_(std::move(generator)), meta_(std::move(meta)), label_(std::move(label)) {
  for (double v : prefix_) {
    if (!std::isfinite(v)) throw DomainError("eigenvalue prefix of '" + label_ + "' contains a non-finite value");
  }
}

double EigenvalueSequence::eval(std::uint64_t n) const {
  if (n == 0) throw DomainError("eigenvalue index must be >= 1");
  const double v = n <= prefix_.size() ? prefix_[n - 1] : generator_.eval(n);
  if (!std::isfinite(v)) {
    throw DomainError("generator of '" + label_ + "' is not finite at n = " + std::to_string(n));
  }
  return v;
}

std::vector<double> EigenvalueSequence::sample(std::uint64_t horizon) const {
  std::vector<double> out;
  out.reserve(horizon);
  for (std::uint64_t n = 1; n <= horizon; ++n) out.push_back(eval(n));
  return out;
}

ConsistencyReport EigenvalueSequence::check_consistency(const ConsistencyParams& params) const {
  ConsistencyReport report;
  report.horizon_used = params.horizon;
  auto problem = [&report](std::string msg) {
    report.ok = false;
    report.problems.push_back(std::move(msg));
  };

  const AccumulationSet& acc = meta_.accumulation;
  if (acc.abs_divergent && meta_.bounded()) problem("abs-divergent tail declared bounded above and below");
  if (acc.abs_divergent && !acc.empty()) problem("abs-divergent tail declares accumulation points");

  std::vector<double> samples = sample(params.horizon);

  // Declared set inside the window, plus generator-implied repeated values.
  const ClosedSetApprox declared_acc = acc.materialize(params.window);
  std::vector<double> repeated;
  for (double v : repeated_values()) {
    if (params.window.contains(v)) repeated.push_back(v);
  }
  const ClosedSetApprox declared =
      unite(declared_acc, ClosedSetApprox(params.window, repeated, {}));

  // Every declared point/interval needs >= 2 samples within delta. Slowly
  // converging sequences get the horizon doubled up to max_horizon; targets
  // still short by then pass as "unverified" only if the extension brought
  // the nearest sample closer.
  std::vector<Target> pending;
  for (double p : declared_acc.points()) {
    if (!std::binary_search(repeated.begin(), repeated.end(), p)) pending.push_back({p, p});
  }
  for (const Interval& iv : declared_acc.intervals()) pending.push_back({iv.lo, iv.hi});

  std::vector<std::size_t> counts(pending.size(), 0);
  std::vector<double> nearest(pending.size(), std::numeric_limits<double>::infinity());

  // Nearest distances use tail samples only: an explicit prefix says
  // nothing about accumulation.
  const std::uint64_t tail_from = prefix_.size();
  auto scan = [&](std::uint64_t from, std::uint64_t to, const std::vector<double>* chunk_in) {
    std::vector<double> chunk, tail;
    if (chunk_in) {
      chunk = *chunk_in;
    } else {
      chunk.reserve(to - from);
      for (std::uint64_t n = from + 1; n <= to; ++n) chunk.push_back(eval(n));
    }
    if (tail_from > from) {
      const std::size_t skip = static_cast<std::size_t>(std::min<std::uint64_t>(tail_from - from, chunk.size()));
      tail.assign(chunk.begin() + static_cast<std::ptrdiff_t>(skip), chunk.end());
    } else {
      tail = chunk;
    }
    std::sort(chunk.begin(), chunk.end());
    std::sort(tail.begin(), tail.end());
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (counts[i] >= 2) continue;
      const Target& t = pending[i];
      const auto lo = std::upper_bound(chunk.begin(), chunk.end(), t.lo - params.delta);
      const auto hi = std::lower_bound(chunk.begin(), chunk.end(), t.hi + params.delta);
      counts[i] += static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, hi - lo));
      const auto it = std::lower_bound(tail.begin(), tail.end(), t.lo);
      if (it != tail.end()) nearest[i] = std::min(nearest[i], t.distance(*it));
      if (it != tail.begin()) nearest[i] = std::min(nearest[i], t.distance(*std::prev(it)));
    }
  };

  scan(0, params.horizon, &samples);
  const std::vector<double> nearest_initial = nearest;
  std::uint64_t reached = params.horizon;
  auto unresolved = [&] {
    return std::any_of(counts.begin(), counts.end(), [](std::size_t c) { return c < 2; });
  };
  while (unresolved() && reached < params.max_horizon) {
    const std::uint64_t next = std::min(reached * 2, params.max_horizon);
    scan(reached, next, nullptr);
    reached = next;
  }
  report.horizon_used = reached;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (counts[i] >= 2) continue;
    if (nearest[i] < nearest_initial[i]) {
      report.unverified_points.push_back(pending[i].lo);
    } else {
      problem("declared " + describe(pending[i]) + " has fewer than 2 samples within " +
              std::to_string(params.delta) + " by horizon " + std::to_string(reached));
    }
  }

  // Large tight clusters must sit near the declared set.
  std::vector<double> in_window;
  for (double v : samples) {
    if (params.window.contains(v)) in_window.push_back(v);
  }
  std::sort(in_window.begin(), in_window.end());
  std::size_t start = 0;
  for (std::size_t i = 1; i <= in_window.size(); ++i) {
    if (i < in_window.size() && in_window[i] - in_window[i - 1] <= params.resolution) continue;
    const std::size_t size = i - start;
    if (size >= params.cluster_min) {
      const double lo = in_window[start];
      const double hi = in_window[i - 1];
      if (!declared.contains(lo, params.delta) || !declared.contains(hi, params.delta)) {
        std::ostringstream os;
        os.precision(17);
        os << "undeclared cluster of " << size << " samples in [" << lo << ", " << hi << "]";
        problem(os.str());
      }
    }
    start = i;
  }
  return report;
}

OperatorSpec perturbed(const OperatorSpec& op, std::span<const Shift> perturbation) {
  std::uint64_t max_index = op.seq.prefix().size();
  for (const Shift& s : perturbation) {
    if (s.index == 0) throw DomainError("perturbation index must be >= 1");
    if (!std::isfinite(s.shift)) throw DomainError("perturbation shift must be finite");
    max_index = std::max(max_index, s.index);
  }
  std::vector<double> prefix = op.seq.sample(max_index);
  for (const Shift& s : perturbation) prefix[s.index - 1] += s.shift;
  EigenvalueSequence seq(std::move(prefix), op.seq.generator(), op.seq.meta(), op.seq.label() + "+K");
  return {std::move(seq), op.basis};
}

void require_same_basis(const OperatorSpec& a, const OperatorSpec& b, const char* operation) {
  if (a.basis != b.basis) {
    throw DomainError(std::string(operation) + ": basis mismatch ('" + a.basis + "' vs '" + b.basis + "')");
  }
}

}  // namespace wvn
