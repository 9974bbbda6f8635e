#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wvn/matching.hpp"
#include "wvn/metrics.hpp"
#include "wvn/sequence.hpp"

namespace wvn {

struct SignPartition {
  std::vector<std::uint64_t> nonnegative;  // I_A, 1-based indices with a_n >= 0
  std::vector<std::uint64_t> negative;     // J_A
  bool both_infinite = false;              // unbounded above and below per metadata
};

SignPartition sign_partition(const OperatorSpec& a, std::uint64_t horizon);

// pi pairs the k-th non-negative index of A with the k-th non-negative index
// of B, and likewise for negative indices (0-based rows: row n - 1 holds
// pi(n) - 1). When the counts differ at the horizon the plan covers the
// longest prefix 1..N' on which they agree and is flagged truncated.
// Throws DomainError when either side lacks one of the signs.
PermutationPlan sign_matched_permutation(const OperatorSpec& a, const OperatorSpec& b, std::uint64_t horizon);

enum class WalkKind { Unbounded, CompactAtZero };

struct OrbitWalk {
  WalkKind kind = WalkKind::Unbounded;
  std::string base_label;
  std::string target_label;
  std::vector<FiniteRankDiagonal> steps;
  std::vector<double> distances;  // distance from the base after each step
  double delta = 0.0;             // radius of U (eps for walks at zero)
  double r = 0.0;                 // step norm bound

  // Unbounded walks: tail start N, horizon p, m_p = max |b~_n - a_n| on N+1..p.
  std::uint64_t tail_start = 0;
  std::uint64_t p = 0;
  double m_p = 0.0;
  double target_distance = 0.0;   // distance of the final operator C_{N,p} from the base
  TailStatus tail = TailStatus::Unverified;
  double tail_bound = 0.0;

  // Walks at zero: per-step distances on each probe vector xi_1..xi_m.
  std::vector<std::vector<double>> probe_distances;
};

// Builds b~ = b o pi by sign matching, the least N with
// sup_{N < n <= horizon} |1/(b~_n - i) - 1/(a_n - i)| < delta, and the
// L-step walk A + jK, K = (b~_n - a_n)/L on N+1..p, L the least integer with
// m_p < r L. Distances come from resolvent_interp.
// Throws DomainError when delta or r <= 0, or when the certified tail bound
// beyond the horizon is not below delta.
OrbitWalk orbit_walk_unbounded(const OperatorSpec& a, const OperatorSpec& b, double delta, double r,
                               std::uint64_t horizon = 512);

// Walk (l/N) B, l = 1..N, N = ceil(|B| / r) + 1, from 0 towards a finite-rank
// diagonal B; distances |((l/N)B - i)^{-1} xi_j - (0 - i)^{-1} xi_j| for
// j <= probes. Throws DomainError when an index of B exceeds `probes`, or
// eps, r <= 0.
OrbitWalk orbit_walk_compact_at_zero(std::span<const Shift> b, std::uint64_t probes, double eps, double r);

struct WalkCheck {
  bool ok = true;
  double max_step_norm = 0.0;
  double max_distance = 0.0;
  double max_discrepancy = 0.0;  // stored vs recomputed distances
  std::vector<std::string> problems;
};

// Recomputes every distance from the base operator and the cumulative steps
// with complex arithmetic; checks step norms < r, distances < delta and
// agreement with the stored values within `tol`. `base` is ignored for walks
// at zero.
WalkCheck verify_walk(const OrbitWalk& walk, const OperatorSpec* base, double tol = 1e-12);

}  // namespace wvn
