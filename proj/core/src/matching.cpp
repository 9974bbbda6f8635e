#include "wvn/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "wvn/error.hpp"

namespace wvn {

namespace {

constexpr std::size_t kMaxMatchSize = 10000;

std::vector<std::size_t> sorted_order(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
  return idx;
}

}  // namespace

std::string_view to_string(TailRule rule) {
  switch (rule) {
    case TailRule::Identity:
      return "identity";
    case TailRule::SignBlock:
      return "sign-block";
    case TailRule::None:
      return "none";
  }
  return "none";
}

bool PermutationPlan::is_bijection() const {
  std::vector<bool> seen(pi.size(), false);
  for (std::size_t j : pi) {
    if (j >= pi.size() || seen[j]) return false;
    seen[j] = true;
  }
  return true;
}

double PermutationPlan::recompute_cost(std::span<const double> a, std::span<const double> b) const {
  double c = 0.0;
  for (std::size_t n = 0; n < pi.size(); ++n) c = std::max(c, std::abs(a[pi[n]] - b[n]));
  return c;
}

// The optimal bottleneck value of a 1-D assignment is attained by pairing
// the two sorted lists in order. The lexicographic refinement then fixes
// rows one at a time: row n takes the smallest column j within t* of b[n]
// such that the remaining values, paired in sorted order, still stay within
// t*. Removing one element from each sorted list shifts the pairing by one
// on the stretch between the two removal positions, so every candidate is
// checked with prefix/suffix maxima in O(1) after an O(M) scan.
PermutationPlan bottleneck_match(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("bottleneck_match: size mismatch");
  if (a.empty()) throw DomainError("bottleneck_match: empty input");
  if (a.size() > kMaxMatchSize) throw DomainError("bottleneck_match: N exceeds 10^4");
  const std::size_t n_total = a.size();

  std::vector<std::size_t> sa = sorted_order(a);  // remaining columns, sorted by value
  std::vector<std::size_t> sb = sorted_order(b);  // remaining rows, sorted by value
  double t = 0.0;
  for (std::size_t k = 0; k < n_total; ++k) t = std::max(t, std::abs(a[sa[k]] - b[sb[k]]));

  PermutationPlan plan;
  plan.pi.assign(n_total, 0);
  plan.bottleneck_cost = t;
  plan.tail_rule = TailRule::None;

  std::vector<double> pre, suf, left, right;
  for (std::size_t row = 0; row < n_total; ++row) {
    const std::size_t m = sa.size();
    const std::size_t p = static_cast<std::size_t>(std::find(sb.begin(), sb.end(), row) - sb.begin());
    // pre[k] = max_{i<k} |A[i]-B[i]|, suf[k] = max_{i>=k} |A[i]-B[i]|
    pre.assign(m + 1, 0.0);
    suf.assign(m + 1, 0.0);
    for (std::size_t k = 0; k < m; ++k) pre[k + 1] = std::max(pre[k], std::abs(a[sa[k]] - b[sb[k]]));
    for (std::size_t k = m; k-- > 0;) suf[k] = std::max(suf[k + 1], std::abs(a[sa[k]] - b[sb[k]]));
    // left[q] (q < p): max_{q<=i<p} |A[i+1]-B[i]|; right[q] (q > p): max_{p<=i<q} |A[i]-B[i+1]|
    left.assign(m, 0.0);
    right.assign(m, 0.0);
    for (std::size_t q = p; q-- > 0;) {
      left[q] = std::max(q + 1 < p ? left[q + 1] : 0.0, std::abs(a[sa[q + 1]] - b[sb[q]]));
    }
    for (std::size_t q = p + 1; q < m; ++q) {
      right[q] = std::max(q - 1 > p ? right[q - 1] : 0.0, std::abs(a[sa[q - 1]] - b[sb[q]]));
    }

    std::size_t best_pos = m;
    for (std::size_t q = 0; q < m; ++q) {
      const std::size_t col = sa[q];
      if (best_pos < m && col >= sa[best_pos]) continue;
      if (std::abs(a[col] - b[row]) > t) continue;
      const std::size_t lo = std::min(p, q);
      const std::size_t hi = std::max(p, q);
      double c = std::max(pre[lo], suf[hi + 1]);
      if (q < p) c = std::max(c, left[q]);
      if (q > p) c = std::max(c, right[q]);
      if (c <= t) best_pos = q;
    }
    if (best_pos == m) throw Error("bottleneck_match: internal error, no feasible column");
    plan.pi[row] = sa[best_pos];
    sa.erase(sa.begin() + static_cast<std::ptrdiff_t>(best_pos));
    sb.erase(sb.begin() + static_cast<std::ptrdiff_t>(p));
  }
  return plan;
}

std::optional<std::vector<std::size_t>> threshold_match(std::span<const double> a, std::span<const double> b,
                                                        std::span<const double> limit) {
  if (a.size() != b.size() || b.size() != limit.size()) throw DomainError("threshold_match: size mismatch");
  std::vector<std::size_t> rows(b.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::sort(rows.begin(), rows.end(), [&](std::size_t i, std::size_t j) {
    const double ri = b[i] + limit[i];
    const double rj = b[j] + limit[j];
    return ri != rj ? ri < rj : i < j;
  });
  std::multiset<std::pair<double, std::size_t>> free;
  for (std::size_t j = 0; j < a.size(); ++j) free.insert({a[j], j});
  std::vector<std::size_t> pi(b.size(), 0);
  for (std::size_t row : rows) {
    const auto it = free.lower_bound({b[row] - limit[row], 0});
    if (it == free.end() || it->first > b[row] + limit[row]) return std::nullopt;
    pi[row] = it->second;
    free.erase(it);
  }
  return pi;
}

}  // namespace wvn
