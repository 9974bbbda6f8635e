#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace wvn {

enum class TailRule { Identity, SignBlock, None };

std::string_view to_string(TailRule rule);

// Row n (0-based) is paired with column pi[n]. For bottleneck plans rows
// index b and columns index a, so the cost of row n is |a[pi[n]] - b[n]|.
struct PermutationPlan {
  std::vector<std::size_t> pi;
  double bottleneck_cost = 0.0;
  TailRule tail_rule = TailRule::None;
  bool truncated = false;  // fewer rows than requested (sign imbalance)

  std::size_t size() const { return pi.size(); }
  bool is_bijection() const;
  double recompute_cost(std::span<const double> a, std::span<const double> b) const;
};

// Bijection minimising max_n |a[pi[n]] - b[n]|; among optimal plans the
// lexicographically smallest pi. Throws DomainError on size mismatch,
// empty input or N > 10^4.
PermutationPlan bottleneck_match(std::span<const double> a, std::span<const double> b);

// A bijection with |a[pi[n]] - b[n]| <= limit[n] for every row, if one
// exists (greedy interval-to-point assignment).
std::optional<std::vector<std::size_t>> threshold_match(std::span<const double> a, std::span<const double> b,
                                                        std::span<const double> limit);

}  // namespace wvn
