#include "wvn/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <tuple>

#include "wvn/error.hpp"

namespace wvn {

namespace {

constexpr std::size_t kEarlyBlocks = 4;

double lowest_feasible(std::span<const double> a, std::span<const double> b, std::vector<double>& limit,
                       std::size_t lo_row, std::size_t hi_row, double current) {
  std::vector<double> cand;
  cand.reserve((hi_row - lo_row) * a.size());
  for (std::size_t r = lo_row; r < hi_row; ++r) {
    for (double x : a) {
      const double c = std::abs(x - b[r]);
      if (c <= current) cand.push_back(c);
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  auto set = [&](double v) { std::fill(limit.begin() + lo_row, limit.begin() + hi_row, v); };
  std::size_t lo = 0;
  std::size_t hi = cand.size() - 1;  // cand.back() == current is feasible
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    set(cand[mid]);
    if (threshold_match(a, b, limit)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  set(cand[lo]);
  return cand[lo];
}

}  // namespace

std::string_view to_string(DecayVerdict v) {
  return v == DecayVerdict::DecreasingToZero ? "decreasing-to-zero-on-horizon" : "not-decreasing";
}

std::vector<double> dyadic_block_sups(std::span<const double> x) {
  std::vector<double> out;
  for (std::size_t start = 1; start <= x.size(); start *= 2) {
    const std::size_t end = std::min(x.size(), 2 * start - 1);
    double s = 0.0;
    for (std::size_t n = start; n <= end; ++n) s = std::max(s, std::abs(x[n - 1]));
    out.push_back(s);
  }
  return out;
}

DecayVerdict dyadic_decay(std::span<const double> sups) {
  if (sups.empty()) return DecayVerdict::DecreasingToZero;
  for (std::size_t j = kEarlyBlocks; j < sups.size(); ++j) {
    if (sups[j] > sups[j - 1]) return DecayVerdict::NotDecreasing;
  }
  const double early = *std::max_element(sups.begin(), sups.begin() + std::min(kEarlyBlocks, sups.size()));
  const double last = sups.back();
  if (last == 0.0) return DecayVerdict::DecreasingToZero;
  if (sups.size() <= kEarlyBlocks) return DecayVerdict::NotDecreasing;
  return last <= 0.5 * early ? DecayVerdict::DecreasingToZero : DecayVerdict::NotDecreasing;
}

WvnConstruction wvn_construct(const OperatorSpec& a_op, const OperatorSpec& b_op, std::size_t n) {
  require_same_basis(a_op, b_op, "wvn_construct");
  if (n < 1) throw DomainError("wvn_construct: horizon must be >= 1");
  const std::vector<double> a = a_op.sample(n);
  const std::vector<double> b = b_op.sample(n);

  WvnConstruction out;
  out.global_cost = bottleneck_match(a, b).bottleneck_cost;

  // Rows not yet refined may take any column.
  const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
  const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
  const double spread = std::max(*amax, *bmax) - std::min(*amin, *bmin);
  std::vector<double> limit(n, spread);
  std::vector<std::size_t> block_start;
  for (std::size_t s = 1; s <= n; s *= 2) block_start.push_back(s - 1);
  for (std::size_t j = block_start.size(); j-- > 0;) {
    const std::size_t lo = block_start[j];
    const std::size_t hi = std::min(n, 2 * lo + 1);
    lowest_feasible(a, b, limit, lo, hi, spread);
  }
  auto pi = threshold_match(a, b, limit);
  if (!pi) throw Error("wvn_construct: internal error, refined thresholds infeasible");

  out.plan.pi = std::move(*pi);
  out.plan.bottleneck_cost = out.plan.recompute_cost(a, b);
  out.plan.tail_rule = TailRule::None;
  auto& cert = out.certificate;
  cert.diag_entries.resize(n);
  for (std::size_t r = 0; r < n; ++r) cert.diag_entries[r] = b[r] - a[out.plan.pi[r]];
  cert.tail_sup_by_block = dyadic_block_sups(cert.diag_entries);
  cert.verdict = dyadic_decay(cert.tail_sup_by_block);
  return out;
}

bool accumulation_match_feasible(const OperatorSpec& a, const OperatorSpec& b, Window window) {
  auto declared = [&](const OperatorSpec& op) {
    return unite(op.meta().accumulation.materialize(window), ClosedSetApprox(window, op.seq.repeated_values(), {}));
  };
  if (!a.meta().finitely_many_isolated || !b.meta().finitely_many_isolated) return false;
  if (a.meta().accumulation.abs_divergent != b.meta().accumulation.abs_divergent) return false;
  return declared(a) == declared(b);
}

UcresResult ucres_equivalent(const OperatorSpec& a, const OperatorSpec& b, const SpectralParams& params) {
  UcresResult r{false, sigma_bar(a, params), sigma_bar(b, params)};
  r.equivalent = r.a.unbounded_bit == r.b.unbounded_bit && r.a.ess.approx_equal(r.b.ess, params.resolution);
  return r;
}

RelCompactReport relatively_compact_check(const OperatorSpec& k, const OperatorSpec& a, const RelCompactParams& p) {
  require_same_basis(k, a, "relatively_compact_check");
  if (p.horizon < 1) throw DomainError("relatively_compact_check: horizon must be >= 1");
  RelCompactReport rep;
  std::vector<double> gamma(p.horizon);
  for (std::uint64_t n = 1; n <= p.horizon; ++n) {
    const std::complex<double> g = k.eval(n) / std::complex<double>(a.eval(n), -1.0);
    gamma[n - 1] = std::abs(g);
    if (gamma[n - 1] > rep.max_gamma) {
      rep.max_gamma = gamma[n - 1];
      rep.argmax = n;
    }
  }
  const Window window{0.0, std::max(1.0, std::ceil(rep.max_gamma))};
  rep.gamma_set = cluster_samples(gamma, window, p.resolution);

  std::vector<double> sorted = gamma;
  std::sort(sorted.begin(), sorted.end());
  rep.sampled_ok = true;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] - sorted[i - 1] <= p.resolution) continue;
    if (i - start >= p.cluster_min && sorted[i - 1] > p.delta) rep.sampled_ok = false;
    start = i;
  }

  const TailMeta& km = k.meta();
  const bool kappa_to_zero = !km.accumulation.abs_divergent && km.accumulation.materialize(Window::symmetric(kDefaultWindowBound))
                                                                   .subset_of(ClosedSetApprox({-1.0, 1.0}, {0.0}, {})) &&
                             std::all_of(k.seq.repeated_values().begin(), k.seq.repeated_values().end(),
                                         [](double v) { return v == 0.0; });
  rep.metadata_route = km.bounded() && (kappa_to_zero || a.meta().accumulation.abs_divergent);

  rep.block_sups = dyadic_block_sups(gamma);
  rep.block_route = dyadic_decay(rep.block_sups) == DecayVerdict::DecreasingToZero;
  rep.compact = rep.sampled_ok && (rep.metadata_route || rep.block_route);
  return rep;
}

ObstructionResult b_t_obstruction(double s, double t, std::uint64_t k_max, std::uint64_t l_max,
                                  std::uint64_t m_max) {
  if (!(0.0 <= s && s < t && t <= 1.0)) throw DomainError("b_t_obstruction: requires 0 <= s < t <= 1");
  if (k_max < 1 || l_max < 1 || m_max < 1) throw DomainError("b_t_obstruction: grid bounds must be >= 1");
  ObstructionResult best{std::numeric_limits<double>::infinity(), 0, 0, 0};
  // a(k, l, m) depends on k and l only through d = k - l; scan d, then report
  // the lexicographically first (k, l) realising it.
  const auto d_lo = 1 - static_cast<std::int64_t>(l_max);
  const auto d_hi = static_cast<std::int64_t>(k_max) - 1;
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    const double tail = t / 3.0 - s / (static_cast<double>(m) + 2.0);
    for (std::int64_t d = d_lo; d <= d_hi; ++d) {
      const double v = std::abs(static_cast<double>(d) + tail);
      const std::uint64_t k = d >= 0 ? static_cast<std::uint64_t>(d) + 1 : 1;
      const std::uint64_t l = d >= 0 ? 1 : static_cast<std::uint64_t>(-d) + 1;
      const bool better = v < best.minimum ||
                          (v == best.minimum && std::tie(k, l, m) < std::tie(best.k, best.l, best.m));
      if (better) best = {v, k, l, m};
    }
  }
  return best;
}

}  // namespace wvn
