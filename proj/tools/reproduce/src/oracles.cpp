#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

namespace wvn::reproduce::oracle {

long double a_t_exponent(std::uint64_t j, double t) {
  return std::pow(static_cast<long double>(j), static_cast<long double>(t));
}

std::uint64_t a_t_band(std::uint64_t j, double t) {
  const long double x = a_t_exponent(j, t);
  // log2(2^x + 1) = x + log2(1 + 2^-x)
  const long double v = x + std::log2(1.0L + std::exp2(-x));
  return static_cast<std::uint64_t>(std::floor(v));
}

std::uint64_t a_t_band_sum(double t, std::int64_t lo, std::int64_t hi) {
  std::uint64_t count = 0;
  for (std::uint64_t j = 1;; ++j) {
    const auto band = static_cast<std::int64_t>(a_t_band(j, t));
    if (band > hi) break;
    if (band >= lo) ++count;
  }
  return count;
}

double obstruction_min(double s, double t, int k_max, int l_max, int m_max) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= k_max; ++k) {
    for (int l = 1; l <= l_max; ++l) {
      for (int m = 1; m <= m_max; ++m) {
        best = std::min(best, std::abs(k - l + t / 3.0 - s / (m + 2.0)));
      }
    }
  }
  return best;
}

BruteMatch brute_bottleneck(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<std::size_t> pi(a.size());
  std::iota(pi.begin(), pi.end(), std::size_t{0});
  BruteMatch best{std::numeric_limits<double>::infinity(), {}};
  do {
    double c = 0.0;
    for (std::size_t n = 0; n < pi.size(); ++n) c = std::max(c, std::abs(a[pi[n]] - b[n]));
    if (c < best.cost) best = {c, pi};
  } while (std::next_permutation(pi.begin(), pi.end()));
  return best;
}

double sampled_srt_sup(double delta, double m, int points) {
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = -m + 2.0 * m * i / (points - 1);
    best = std::max(best, std::abs(std::polar(1.0, t * delta) - 1.0));
  }
  return best;
}

}  // namespace wvn::reproduce::oracle
