#pragma once

// Reference computations for the reproduction suite. Each one takes a
// different route from the library code it checks.

#include <cstdint>
#include <vector>

namespace wvn::reproduce::oracle {

// Band of |a| = 2^(j^t) under |a| + 1 in [2^n, 2^{n+1}), in long double.
long double a_t_exponent(std::uint64_t j, double t);
std::uint64_t a_t_band(std::uint64_t j, double t);

// #{ j : band(j) in [lo, hi] } for A_t, enumerating j upward until the band
// passes hi (bands are non-decreasing in j).
std::uint64_t a_t_band_sum(double t, std::int64_t lo, std::int64_t hi);

// min |k - l + t/3 - s/(m+2)| by a plain triple loop.
double obstruction_min(double s, double t, int k_max, int l_max, int m_max);

struct BruteMatch {
  double cost = 0.0;
  std::vector<std::size_t> pi;  // lexicographically first optimal
};

// Exhaustive search over all N! permutations (N <= 9).
BruteMatch brute_bottleneck(const std::vector<double>& a, const std::vector<double>& b);

// sup_t |e^{it delta} - 1| on [-m, m] from `points` samples.
double sampled_srt_sup(double delta, double m, int points);

}  // namespace wvn::reproduce::oracle
