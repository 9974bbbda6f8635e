#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wvn/closed_set.hpp"
#include "wvn/matching.hpp"
#include "wvn/sequence.hpp"
#include "wvn/spectra.hpp"

namespace wvn {

enum class DecayVerdict { DecreasingToZero, NotDecreasing };

std::string_view to_string(DecayVerdict v);

// sup |x_n| over dyadic blocks of 1-based indices [2^j, 2^{j+1}), j = 0, 1, ...
std::vector<double> dyadic_block_sups(std::span<const double> x);

// Non-increasing from block 3 on, and the last block is 0 or at most half
// the largest of blocks 0..3.
DecayVerdict dyadic_decay(std::span<const double> block_sups);

struct CompactCertificate {
  std::vector<double> diag_entries;       // c_n = b_n - a_{pi(n)}
  std::vector<double> tail_sup_by_block;  // dyadic_block_sups(diag_entries)
  DecayVerdict verdict = DecayVerdict::NotDecreasing;
};

struct WvnConstruction {
  PermutationPlan plan;
  CompactCertificate certificate;
  double global_cost = 0.0;  // optimal bottleneck over the whole horizon
};

// Matches the first N eigenvalues of A onto those of B. The global optimum
// comes from bottleneck_match; the plan then lowers block thresholds from the
// last dyadic block backwards while keeping every row within the optimum.
WvnConstruction wvn_construct(const OperatorSpec& a, const OperatorSpec& b, std::size_t n);

// Equal declared accumulation sets (inside `window`) and finitely many
// isolated eigenvalues on both sides.
bool accumulation_match_feasible(const OperatorSpec& a, const OperatorSpec& b,
                                 Window window = Window::symmetric(kDefaultWindowBound));

struct UcresResult {
  bool equivalent = false;
  SigmaBar a;
  SigmaBar b;
};

UcresResult ucres_equivalent(const OperatorSpec& a, const OperatorSpec& b, const SpectralParams& params = {});

struct RelCompactReport {
  bool compact = false;
  bool sampled_ok = false;      // large |gamma| clusters only near 0
  bool metadata_route = false;  // kappa bounded and (kappa -> 0 or |a_n| -> infinity)
  bool block_route = false;     // dyadic block sups of |gamma| decay
  double max_gamma = 0.0;
  std::uint64_t argmax = 0;
  std::vector<double> block_sups;
  ClosedSetApprox gamma_set;    // clustered {|gamma_n|}
};

struct RelCompactParams {
  std::uint64_t horizon = kDefaultHorizon;
  double resolution = kDefaultResolution;
  double delta = 1e-2;
  std::size_t cluster_min = 50;
};

// gamma_n = kappa_n / (a_n - i) for the co-diagonal pair (K, A).
RelCompactReport relatively_compact_check(const OperatorSpec& k, const OperatorSpec& a,
                                          const RelCompactParams& params = {});

struct ObstructionResult {
  double minimum = 0.0;
  std::uint64_t k = 0, l = 0, m = 0;  // first grid point attaining it
};

// min over 1 <= k <= k_max, 1 <= l <= l_max, 1 <= m <= m_max of
// |k - l + t/3 - s/(m + 2)|. Requires 0 <= s < t <= 1.
ObstructionResult b_t_obstruction(double s, double t, std::uint64_t k_max, std::uint64_t l_max,
                                  std::uint64_t m_max);

}  // namespace wvn
