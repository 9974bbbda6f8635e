#include "wvn/turbulence.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>

#include "wvn/error.hpp"

namespace wvn {

namespace {

using cd = std::complex<double>;

double complex_gap(double x, double base) {
  const cd i(0.0, 1.0);
  return std::abs(1.0 / (x - i) - 1.0 / (base - i));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

SignPartition sign_partition(const OperatorSpec& a, std::uint64_t horizon) {
  SignPartition out;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    (a.eval(n) >= 0.0 ? out.nonnegative : out.negative).push_back(n);
  }
  out.both_infinite = !a.meta().bounded_above && !a.meta().bounded_below;
  return out;
}

PermutationPlan sign_matched_permutation(const OperatorSpec& a, const OperatorSpec& b, std::uint64_t horizon) {
  require_same_basis(a, b, "sign_matched_permutation");
  const SignPartition pa = sign_partition(a, horizon);
  const SignPartition pb = sign_partition(b, horizon);
  if (pa.nonnegative.empty() || pa.negative.empty() || pb.nonnegative.empty() || pb.negative.empty()) {
    throw DomainError("sign_matched_permutation: both operators need non-negative and negative eigenvalues");
  }
  // Longest prefix 1..len on which the sign counts agree.
  std::uint64_t len = 0;
  std::int64_t balance = 0;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    balance += (a.eval(n) >= 0.0 ? 1 : 0) - (b.eval(n) >= 0.0 ? 1 : 0);
    if (balance == 0) len = n;
  }
  PermutationPlan plan;
  plan.tail_rule = TailRule::SignBlock;
  plan.truncated = len < horizon;
  plan.pi.assign(len, 0);
  std::size_t ip = 0, in = 0;
  for (std::uint64_t n = 1; n <= len; ++n) {
    if (a.eval(n) >= 0.0) {
      plan.pi[n - 1] = pb.nonnegative[ip++] - 1;
    } else {
      plan.pi[n - 1] = pb.negative[in++] - 1;
    }
  }
  for (std::uint64_t n = 1; n <= len; ++n) {
    plan.bottleneck_cost = std::max(plan.bottleneck_cost, std::abs(b.eval(plan.pi[n - 1] + 1) - a.eval(n)));
  }
  return plan;
}

OrbitWalk orbit_walk_unbounded(const OperatorSpec& a, const OperatorSpec& b, double delta, double r,
                               std::uint64_t horizon) {
  if (!(delta > 0.0) || !(r > 0.0)) throw DomainError("orbit_walk_unbounded: delta and r must be > 0");
  if (horizon < 1) throw DomainError("orbit_walk_unbounded: horizon must be >= 1");
  const PermutationPlan plan = sign_matched_permutation(a, b, horizon);
  const std::uint64_t p = plan.size();
  std::vector<double> av(p), bt(p);
  for (std::uint64_t n = 1; n <= p; ++n) {
    av[n - 1] = a.eval(n);
    bt[n - 1] = b.eval(plan.pi[n - 1] + 1);
  }

  OrbitWalk w;
  w.kind = WalkKind::Unbounded;
  w.base_label = a.label();
  w.target_label = b.label();
  w.delta = delta;
  w.r = r;
  w.p = p;

  const bool divergent = a.meta().accumulation.abs_divergent && b.meta().accumulation.abs_divergent;
  if (divergent && p >= 1) {
    const double low = std::min(std::abs(av.back()), std::abs(bt.back()));
    w.tail = TailStatus::Certified;
    w.tail_bound = 2.0 / std::sqrt(low * low + 1.0);
    for (std::uint64_t n = p > 64 ? p - 64 : 1; n < p; ++n) {
      if (std::abs(av[n]) < std::abs(av[n - 1]) || std::abs(bt[n]) < std::abs(bt[n - 1])) {
        w.tail = TailStatus::Unverified;
      }
    }
    if (w.tail == TailStatus::Certified && w.tail_bound >= delta) {
      throw DomainError("target not within delta-reachable tail at this horizon (tail bound " + fmt(w.tail_bound) +
                        ")");
    }
  }

  // Least N: suffix maxima of the resolvent gaps.
  std::uint64_t n_start = p;
  double suffix = 0.0;
  for (std::uint64_t n = p; n >= 1; --n) {
    suffix = std::max(suffix, resolvent_gap(av[n - 1], bt[n - 1]));
    if (suffix >= delta) break;
    n_start = n - 1;
  }
  w.tail_start = n_start;

  for (std::uint64_t n = n_start + 1; n <= p; ++n) w.m_p = std::max(w.m_p, std::abs(bt[n - 1] - av[n - 1]));
  if (w.m_p == 0.0) return w;

  auto steps = static_cast<std::uint64_t>(std::floor(w.m_p / r)) + 1;
  while (!(w.m_p < r * static_cast<double>(steps))) ++steps;
  const double l = static_cast<double>(steps);

  FiniteRankDiagonal k;
  for (std::uint64_t n = n_start + 1; n <= p; ++n) {
    const double shift = (bt[n - 1] - av[n - 1]) / l;
    if (shift != 0.0) k.push_back({n, shift});
  }
  for (std::uint64_t j = 1; j <= steps; ++j) {
    w.steps.push_back(k);
    const double s = static_cast<double>(j) / l;
    double d = 0.0;
    for (std::uint64_t n = n_start + 1; n <= p; ++n) d = std::max(d, resolvent_interp(av[n - 1], bt[n - 1], s));
    w.distances.push_back(d);
  }
  for (std::uint64_t n = n_start + 1; n <= p; ++n) {
    w.target_distance = std::max(w.target_distance, resolvent_interp(av[n - 1], bt[n - 1], 1.0));
  }
  return w;
}

OrbitWalk orbit_walk_compact_at_zero(std::span<const Shift> b, std::uint64_t probes, double eps, double r) {
  if (!(eps > 0.0) || !(r > 0.0)) throw DomainError("orbit_walk_compact_at_zero: eps and r must be > 0");
  std::map<std::uint64_t, double> entries;
  double norm = 0.0;
  for (const Shift& s : b) {
    if (s.index == 0) throw DomainError("orbit_walk_compact_at_zero: indices start at 1");
    if (s.index > probes) {
      throw DomainError("orbit_walk_compact_at_zero: index " + std::to_string(s.index) + " exceeds probe window " +
                        std::to_string(probes));
    }
    if (!std::isfinite(s.shift)) throw DomainError("orbit_walk_compact_at_zero: non-finite entry");
    entries[s.index] += s.shift;
  }
  for (auto& [idx, v] : entries) norm = std::max(norm, std::abs(v));

  OrbitWalk w;
  w.kind = WalkKind::CompactAtZero;
  w.base_label = "0";
  w.target_label = "B";
  w.delta = eps;
  w.r = r;
  if (norm == 0.0) return w;

  const auto steps = static_cast<std::uint64_t>(std::ceil(norm / r)) + 1;
  const double n_steps = static_cast<double>(steps);
  FiniteRankDiagonal step;
  for (auto& [idx, v] : entries) {
    if (v != 0.0) step.push_back({idx, v / n_steps});
  }
  w.probe_distances.assign(probes, {});
  for (std::uint64_t l = 1; l <= steps; ++l) {
    w.steps.push_back(step);
    // |((l/N) lambda - i)^{-1} - i|^2 = lambda^2 / (lambda^2 + N^2/l^2)
    const double ratio = n_steps / static_cast<double>(l);
    double worst = 0.0;
    for (std::uint64_t j = 1; j <= probes; ++j) {
      const auto it = entries.find(j);
      const double lam = it == entries.end() ? 0.0 : it->second;
      const double d = std::sqrt(lam * lam / (lam * lam + ratio * ratio));
      w.probe_distances[j - 1].push_back(d);
      worst = std::max(worst, d);
    }
    w.distances.push_back(worst);
  }
  w.p = probes;
  w.m_p = norm;
  w.tail_start = steps;
  return w;
}

WalkCheck verify_walk(const OrbitWalk& walk, const OperatorSpec* base, double tol) {
  WalkCheck c;
  auto problem = [&c](std::string m) {
    c.ok = false;
    c.problems.push_back(std::move(m));
  };
  if (walk.steps.size() != walk.distances.size()) problem("steps and distances differ in length");
  if (walk.kind == WalkKind::Unbounded && base == nullptr) {
    problem("unbounded walk needs its base operator");
    return c;
  }
  std::map<std::uint64_t, double> offset;
  for (std::size_t j = 0; j < walk.steps.size(); ++j) {
    double norm = 0.0;
    for (const Shift& s : walk.steps[j]) {
      norm = std::max(norm, std::abs(s.shift));
      offset[s.index] += s.shift;
    }
    c.max_step_norm = std::max(c.max_step_norm, norm);
    if (!(norm < walk.r)) problem("step " + std::to_string(j + 1) + " has norm " + fmt(norm) + " >= r");

    // Indices outside the support keep their base value and contribute 0.
    double d = 0.0;
    for (const auto& [idx, off] : offset) {
      const double a0 = walk.kind == WalkKind::Unbounded ? base->eval(idx) : 0.0;
      d = std::max(d, complex_gap(a0 + off, a0));
    }
    c.max_distance = std::max(c.max_distance, d);
    if (!(d < walk.delta)) problem("step " + std::to_string(j + 1) + " leaves U: distance " + fmt(d));
    if (j < walk.distances.size()) {
      const double gap = std::abs(d - walk.distances[j]);
      c.max_discrepancy = std::max(c.max_discrepancy, gap);
      if (gap > tol) problem("step " + std::to_string(j + 1) + " stored distance off by " + fmt(gap));
    }
  }
  return c;
}

}  // namespace wvn
