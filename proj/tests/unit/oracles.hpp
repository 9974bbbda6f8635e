#pragma once

// Reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "wvn/sequence.hpp"

namespace oracle {

// Hopcroft-Karp on the threshold graph: row n may use column c when
// |a[c] - b[n]| <= t and c is not banned. Returns the matching size.
class ThresholdMatcher {
 public:
  ThresholdMatcher(const std::vector<double>& a, const std::vector<double>& b) : a_(a), b_(b) {}

  std::size_t max_matching(double t, const std::vector<bool>& row_off, const std::vector<bool>& col_off) {
    const std::size_t n = a_.size();
    adj_.assign(n, {});
    for (std::size_t r = 0; r < n; ++r) {
      if (row_off[r]) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (!col_off[c] && std::abs(a_[c] - b_[r]) <= t) adj_[r].push_back(c);
      }
    }
    match_row_.assign(n, kNone);
    match_col_.assign(n, kNone);
    std::size_t size = 0;
    while (bfs(row_off)) {
      for (std::size_t r = 0; r < n; ++r) {
        if (!row_off[r] && match_row_[r] == kNone && dfs(r)) ++size;
      }
    }
    return size;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  bool bfs(const std::vector<bool>& row_off) {
    std::queue<std::size_t> q;
    dist_.assign(a_.size(), kNone);
    for (std::size_t r = 0; r < a_.size(); ++r) {
      if (!row_off[r] && match_row_[r] == kNone) {
        dist_[r] = 0;
        q.push(r);
      }
    }
    bool found = false;
    while (!q.empty()) {
      const std::size_t r = q.front();
      q.pop();
      for (std::size_t c : adj_[r]) {
        const std::size_t r2 = match_col_[c];
        if (r2 == kNone) {
          found = true;
        } else if (dist_[r2] == kNone) {
          dist_[r2] = dist_[r] + 1;
          q.push(r2);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t r) {
    for (std::size_t c : adj_[r]) {
      const std::size_t r2 = match_col_[c];
      if (r2 == kNone || (dist_[r2] == dist_[r] + 1 && dfs(r2))) {
        match_row_[r] = c;
        match_col_[c] = r;
        return true;
      }
    }
    dist_[r] = kNone;
    return false;
  }

  const std::vector<double>& a_;
  const std::vector<double>& b_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_row_, match_col_, dist_;
};

// Binary search over the sorted candidate costs with a perfect-matching test.
inline double bottleneck_cost(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  std::vector<double> cand;
  cand.reserve(n * n);
  for (double x : a) {
    for (double y : b) cand.push_back(std::abs(x - y));
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  ThresholdMatcher m(a, b);
  const std::vector<bool> none(n, false);
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (m.max_matching(cand[mid], none, none) == n) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return cand[lo];
}

// Lexicographically smallest optimal permutation: fix rows in order, each to
// the smallest column that still leaves a perfect matching.
inline std::vector<std::size_t> lex_min_plan(const std::vector<double>& a, const std::vector<double>& b, double t) {
  const std::size_t n = a.size();
  ThresholdMatcher m(a, b);
  std::vector<bool> row_off(n, false), col_off(n, false);
  std::vector<std::size_t> pi(n);
  for (std::size_t r = 0; r < n; ++r) {
    row_off[r] = true;
    for (std::size_t c = 0; c < n; ++c) {
      if (col_off[c] || std::abs(a[c] - b[r]) > t) continue;
      col_off[c] = true;
      if (m.max_matching(t, row_off, col_off) == n - r - 1) {
        pi[r] = c;
        break;
      }
      col_off[c] = false;
    }
  }
  return pi;
}

inline double resolvent_gap(double a, double b) {
  const std::complex<double> i(0.0, 1.0);
  return std::abs(1.0 / (a - i) - 1.0 / (b - i));
}

// Operator from explicit prefix values and a constant tail.
inline wvn::OperatorSpec from_values(std::vector<double> values, double tail, wvn::TailMeta meta, std::string label,
                                     std::string basis = "xi") {
  wvn::EigenvalueSequence seq(std::move(values), wvn::parse_generator(std::to_string(tail)), std::move(meta),
                              std::move(label));
  return {std::move(seq), std::move(basis)};
}

inline wvn::OperatorSpec from_generator(const std::string& gen, wvn::TailMeta meta, std::string label,
                                        std::string basis = "xi") {
  return {wvn::EigenvalueSequence({}, wvn::parse_generator(gen), std::move(meta), std::move(label)), std::move(basis)};
}

inline wvn::TailMeta divergent_meta(bool above, bool below) {
  wvn::TailMeta m;
  m.bounded_above = !above;
  m.bounded_below = !below;
  m.accumulation.abs_divergent = true;
  return m;
}

inline wvn::TailMeta point_meta(std::vector<double> points) {
  wvn::TailMeta m;
  m.accumulation.points = std::move(points);
  m.finitely_many_isolated = true;
  return m;
}

}  // namespace oracle
