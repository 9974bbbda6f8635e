#include "wvn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wvn/error.hpp"

namespace wvn {

namespace {

constexpr std::uint64_t kMonotoneWindow = 64;

// |a_n| non-decreasing over the last kMonotoneWindow samples up to `horizon`.
bool tail_looks_monotone(const OperatorSpec& a, std::uint64_t horizon) {
  const std::uint64_t from = horizon > kMonotoneWindow ? horizon - kMonotoneWindow : 1;
  double prev = std::abs(a.eval(from));
  for (std::uint64_t n = from + 1; n <= horizon; ++n) {
    const double v = std::abs(a.eval(n));
    if (v < prev) return false;
    prev = v;
  }
  return true;
}

}  // namespace

double srt_sup(double delta, std::uint64_t m) {
  const double x = static_cast<double>(m) * std::abs(delta);
  if (x >= std::numbers::pi) return 2.0;
  return 2.0 * std::sin(x / 2.0);
}

double resolvent_gap(double a, double b) {
  return std::abs(b - a) / (std::sqrt(a * a + 1.0) * std::sqrt(b * b + 1.0));
}

SrtDistance srt_distance(const OperatorSpec& a, const OperatorSpec& b, const MetricParams& p) {
  require_same_basis(a, b, "srt_distance");
  if (p.n_max < 1 || p.m_max < 1) throw DomainError("srt_distance: n_max and m_max must be >= 1");
  if (p.n_max > 1000 || p.m_max > 1000) throw DomainError("srt_distance: n_max and m_max must be <= 1000");
  SrtDistance out;
  for (std::uint64_t n = 1; n <= p.n_max; ++n) {
    const double delta = a.eval(n) - b.eval(n);
    if (delta == 0.0) continue;
    for (std::uint64_t m = 1; m <= p.m_max; ++m) {
      out.value += std::ldexp(srt_sup(delta, m), -static_cast<int>(n + m));
    }
  }
  const double nt = std::ldexp(1.0, -static_cast<int>(p.n_max));
  const double mt = std::ldexp(1.0, -static_cast<int>(p.m_max));
  // sum over (n > n_max or m > m_max) of 2^{-(n+m)} * 2
  out.truncation_bound = 2.0 * (1.0 - (1.0 - nt) * (1.0 - mt));
  if (p.tail_bound_mode == TailBoundMode::MetadataBound && a.seq.generator() == b.seq.generator()) {
    const std::uint64_t agree_from = std::max(a.seq.prefix().size(), b.seq.prefix().size());
    if (agree_from <= p.n_max) out.truncation_bound = 2.0 * (1.0 - nt) * mt;
  }
  return out;
}

NrtDistance nrt_distance(const OperatorSpec& a, const OperatorSpec& b, std::uint64_t horizon) {
  require_same_basis(a, b, "nrt_distance");
  if (horizon < 1) throw DomainError("nrt_distance: horizon must be >= 1");
  NrtDistance out;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const double g = resolvent_gap(a.eval(n), b.eval(n));
    if (g > out.value) {
      out.value = g;
      out.argmax = n;
    }
  }
  const bool divergent = a.meta().accumulation.abs_divergent && b.meta().accumulation.abs_divergent;
  if (divergent && tail_looks_monotone(a, horizon) && tail_looks_monotone(b, horizon)) {
    const double low = std::min(std::abs(a.eval(horizon)), std::abs(b.eval(horizon)));
    out.tail = TailStatus::Certified;
    out.tail_bound = 2.0 / std::sqrt(low * low + 1.0);
    out.head_dominates = out.value >= out.tail_bound;
  }
  return out;
}

double resolvent_interp(double a, double b, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("resolvent_interp: s must lie in [0, 1]");
  const double x = (1.0 - s) * a + s * b;
  return resolvent_gap(a, x);
}

InterpPeak resolvent_interp_peak(double a, double b, std::size_t grid, int levels) {
  if (grid < 2) throw DomainError("resolvent_interp_peak: grid must have >= 2 points");
  InterpPeak best{0.0, resolvent_interp(a, b, 0.0)};
  double lo = 0.0;
  double hi = 1.0;
  for (int level = 0; level <= levels; ++level) {
    const double step = (hi - lo) / static_cast<double>(grid - 1);
    for (std::size_t i = 0; i < grid; ++i) {
      const double s = std::min(1.0, lo + step * static_cast<double>(i));
      const double v = resolvent_interp(a, b, s);
      if (v > best.value) best = {s, v};
    }
    lo = std::max(0.0, best.s - step);
    hi = std::min(1.0, best.s + step);
  }
  return best;
}

}  // namespace wvn
