#include "wvn/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wvn/error.hpp"

namespace wvn {

namespace {

constexpr std::uint64_t kStopRun = 64;
constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

// floor(log2(x)) for x >= 1, exact.
std::size_t floor_log2(double x) {
  int e = 0;
  std::frexp(x, &e);
  return static_cast<std::size_t>(e - 1);
}

// log(1 + x^2) without overflow.
double log_weight(double x) {
  const double ax = std::abs(x);
  if (ax <= 1.0) return std::log1p(ax * ax);
  return 2.0 * std::log(ax) + std::log1p(1.0 / (ax * ax));
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kInf - b ? kInf : a + b; }

// Per-band lower and upper values after growth fill-in.
struct Bands {
  std::vector<std::uint64_t> lo;
  std::vector<std::uint64_t> hi;  // kInf when unknown
  std::vector<std::uint64_t> lo_prefix;
  std::vector<std::uint64_t> hi_prefix;

  std::uint64_t lo_sum(std::int64_t from, std::int64_t to) const { return sum(lo_prefix, from, to); }
  std::uint64_t hi_sum(std::int64_t from, std::int64_t to) const { return sum(hi_prefix, from, to); }

 private:
  static std::uint64_t sum(const std::vector<std::uint64_t>& pre, std::int64_t from, std::int64_t to) {
    from = std::max<std::int64_t>(from, 0);
    if (to < from) return 0;
    const std::uint64_t a = pre[static_cast<std::size_t>(to) + 1];
    const std::uint64_t b = pre[static_cast<std::size_t>(from)];
    return a == kInf ? kInf : a - b;
  }
};

Bands resolve(const BandProfile& p, std::size_t needed, const char* which) {
  if (!p.growth && p.dims.size() < needed) {
    throw DomainError(std::string("fw_decide: profile ") + which + " has " + std::to_string(p.dims.size()) +
                      " bands, needs " + std::to_string(needed));
  }
  Bands b;
  b.lo.resize(needed);
  b.hi.resize(needed);
  for (std::size_t n = 0; n < needed; ++n) {
    std::optional<std::uint64_t> g;
    if (p.growth) {
      const double v = p.growth->eval(n);
      if (!std::isfinite(v) || v < 0.0 || v != std::floor(v) || v > 9.0e15) {
        throw DomainError(std::string("fw_decide: growth of ") + which + " is not a count at band " +
                          std::to_string(n));
      }
      g = static_cast<std::uint64_t>(v);
    }
    if (n < p.dims.size() && p.dims[n].kind == BandKind::Exact) {
      if (g && *g != p.dims[n].count) {
        throw DomainError(std::string("fw_decide: growth of ") + which + " disagrees with band " + std::to_string(n));
      }
      b.lo[n] = b.hi[n] = p.dims[n].count;
    } else if (g && !(n < p.dims.size() && p.dims[n].kind == BandKind::Infinite)) {
      if (n < p.dims.size() && *g < p.dims[n].count) {
        throw DomainError(std::string("fw_decide: growth of ") + which + " below the sampled count at band " +
                          std::to_string(n));
      }
      b.lo[n] = b.hi[n] = *g;
    } else {
      b.lo[n] = p.dims[n].count;
      b.hi[n] = kInf;
    }
  }
  b.lo_prefix.assign(needed + 1, 0);
  b.hi_prefix.assign(needed + 1, 0);
  for (std::size_t n = 0; n < needed; ++n) {
    b.lo_prefix[n + 1] = sat_add(b.lo_prefix[n], b.lo[n]);
    b.hi_prefix[n + 1] = b.hi[n] == kInf ? kInf : sat_add(b.hi_prefix[n], b.hi[n]);
  }
  return b;
}

}  // namespace

std::size_t band_index(double value, BandConvention convention) {
  const double v = std::abs(value);
  if (convention == BandConvention::Shifted) return floor_log2(v + 1.0);
  return v < 1.0 ? 0 : floor_log2(v);
}

BandProfile band_profile(const OperatorSpec& a, std::size_t n_max, std::uint64_t horizon,
                         BandConvention convention) {
  if (horizon < 1) throw DomainError("band_profile: horizon must be >= 1");
  BandProfile out;
  out.label = a.label();
  const TailMeta& meta = a.meta();
  const bool divergent = meta.accumulation.abs_divergent;

  std::vector<std::uint64_t> counts(n_max + 1, 0);
  std::uint64_t run = 0;
  double prev = 0.0;
  bool stopped_early = false;
  std::uint64_t n = 1;
  for (; n <= horizon; ++n) {
    const double v = a.eval(n);
    const std::size_t band = band_index(v, convention);
    if (band <= n_max) ++counts[band];
    if (divergent) {
      run = (band > n_max + 1 && std::abs(v) >= prev) ? run + 1 : 0;
      prev = std::abs(v);
      if (run >= kStopRun && n > a.seq.prefix().size()) {
        stopped_early = true;
        break;
      }
    }
  }
  out.horizon = stopped_early ? n : horizon;

  std::vector<bool> infinite(n_max + 1, false);
  auto mark = [&](double lo, double hi) {
    const std::size_t b_lo = band_index(lo, convention);
    const std::size_t b_hi = band_index(hi, convention);
    for (std::size_t b = b_lo; b <= std::min(b_hi, n_max); ++b) infinite[b] = true;
  };
  const Window wide = Window::symmetric(std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(n_max + 2, 1000))));
  AccumulationSet finite_part = meta.accumulation;
  finite_part.progressions.clear();
  const ClosedSetApprox acc = finite_part.materialize(wide);
  for (const Progression& pr : meta.accumulation.progressions) {
    if (pr.step == 0.0) {
      mark(std::abs(pr.start), std::abs(pr.start));
      continue;
    }
    // Walk terms until they leave band n_max or bands get wider than the step
    // (from there on every band holds a term).
    for (double j = 0.0;; j += 1.0) {
      const double x = std::abs(pr.start + j * pr.step);
      const std::size_t b = band_index(x, convention);
      if (b > n_max) break;
      if (std::ldexp(1.0, static_cast<int>(b)) >= std::abs(pr.step) && std::abs(pr.start + (j + 1.0) * pr.step) > x) {
        for (std::size_t r = b; r <= n_max; ++r) infinite[r] = true;
        break;
      }
      infinite[b] = true;
    }
  }
  for (double p : acc.points()) mark(std::abs(p), std::abs(p));
  for (double r : a.seq.repeated_values()) mark(std::abs(r), std::abs(r));
  for (const Interval& iv : acc.intervals()) {
    const double lo = (iv.lo <= 0.0 && iv.hi >= 0.0) ? 0.0 : std::min(std::abs(iv.lo), std::abs(iv.hi));
    mark(lo, std::max(std::abs(iv.lo), std::abs(iv.hi)));
  }

  const bool complete = stopped_early || (!divergent && meta.finitely_many_isolated);
  out.dims.resize(n_max + 1);
  for (std::size_t b = 0; b <= n_max; ++b) {
    BandKind kind = complete ? BandKind::Exact : BandKind::AtLeast;
    if (infinite[b]) kind = BandKind::Infinite;
    out.dims[b] = {counts[b], kind};
  }
  return out;
}

std::string_view to_string(FWOutcome o) {
  switch (o) {
    case FWOutcome::Equivalent:
      return "equivalent";
    case FWOutcome::Violation:
      return "violation";
    case FWOutcome::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(FWSide s) { return s == FWSide::PinQ ? "P<=Q" : "Q<=P"; }

FWVerdict fw_decide(const BandProfile& p, const BandProfile& q, std::uint64_t k_max, std::uint64_t n_max,
                    std::uint64_t l_max) {
  const std::size_t needed = n_max + l_max + k_max + 1;
  const Bands bp = resolve(p, needed, "P");
  const Bands bq = resolve(q, needed, "Q");

  FWVerdict v;
  v.k_max = k_max;
  v.n_max = n_max;
  v.l_max = l_max;
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    FWStatus status = FWStatus::Pass;
    std::optional<FWWitness> witness;
    for (std::uint64_t n = 0; n <= n_max && !witness; ++n) {
      for (std::uint64_t l = 0; l <= l_max && !witness; ++l) {
        const auto lhs_from = static_cast<std::int64_t>(n);
        const auto lhs_to = static_cast<std::int64_t>(n + l);
        const auto rhs_from = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(k);
        const auto rhs_to = static_cast<std::int64_t>(n + l + k);
        for (const FWSide side : {FWSide::PinQ, FWSide::QinP}) {
          const Bands& left = side == FWSide::PinQ ? bp : bq;
          const Bands& right = side == FWSide::PinQ ? bq : bp;
          const std::uint64_t lhs_lo = left.lo_sum(lhs_from, lhs_to);
          const std::uint64_t lhs_hi = left.hi_sum(lhs_from, lhs_to);
          const std::uint64_t rhs_lo = right.lo_sum(rhs_from, rhs_to);
          const std::uint64_t rhs_hi = right.hi_sum(rhs_from, rhs_to);
          if (rhs_hi != kInf && lhs_lo > rhs_hi) {
            witness = FWWitness{k, n, l, side, lhs_lo, rhs_hi};
            break;
          }
          if (lhs_hi == kInf || lhs_hi > rhs_lo) status = FWStatus::Uncertain;
        }
      }
    }
    if (witness) {
      status = FWStatus::Fail;
      v.witnesses.push_back(*witness);
    }
    v.per_k.push_back(status);
  }
  const auto pass = std::find(v.per_k.begin(), v.per_k.end(), FWStatus::Pass);
  if (pass != v.per_k.end()) {
    v.outcome = FWOutcome::Equivalent;
    v.k = static_cast<std::uint64_t>(pass - v.per_k.begin());
  } else if (std::all_of(v.per_k.begin(), v.per_k.end(), [](FWStatus s) { return s == FWStatus::Fail; })) {
    v.outcome = FWOutcome::Violation;
  } else {
    v.outcome = FWOutcome::Inconclusive;
  }
  return v;
}

DomainEquality domains_equal_codiag(const OperatorSpec& a, const OperatorSpec& b, std::uint64_t horizon) {
  require_same_basis(a, b, "domains_equal_codiag");
  if (horizon < 1) throw DomainError("domains_equal_codiag: horizon must be >= 1");
  DomainEquality out;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double last = 0.0;
  std::vector<double> block_end_logs;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const double lr = log_weight(a.eval(n)) - log_weight(b.eval(n));
    lo = std::min(lo, lr);
    hi = std::max(hi, lr);
    last = lr;
    if (((n + 1) & n) == 0 || n == horizon) block_end_logs.push_back(std::abs(lr));  // n = 2^j - 1
  }
  out.ratio_inf = std::exp(lo);
  out.ratio_sup = std::exp(hi);
  out.ratio_at_horizon = std::exp(last);
  out.log_spread = hi - lo;
  out.bounds_agree = a.meta().bounded_above == b.meta().bounded_above &&
                     a.meta().bounded_below == b.meta().bounded_below;
  if (block_end_logs.size() >= 4) {
    const std::size_t s = block_end_logs.size();
    bool growing = true;
    for (std::size_t i = s - 3; i < s; ++i) growing = growing && block_end_logs[i] > block_end_logs[i - 1];
    out.drift = growing && block_end_logs[s - 1] - block_end_logs[s - 4] > std::log(2.0);
  }
  out.equal = out.log_spread <= std::log(kDomainRatioLimit) && out.bounds_agree && !out.drift;
  return out;
}

}  // namespace wvn
