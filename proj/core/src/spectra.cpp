#include "wvn/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wvn/error.hpp"

namespace wvn {

namespace {

ConsistencyParams consistency_for(const SpectralParams& p) {
  ConsistencyParams c;
  c.horizon = std::max<std::uint64_t>(p.horizon, 1);
  c.resolution = p.resolution;
  c.window = p.window;
  return c;
}

ClosedSetApprox declared_essential(const OperatorSpec& a, Window window) {
  const ClosedSetApprox acc = a.meta().accumulation.materialize(window);
  return unite(acc, ClosedSetApprox(window, a.seq.repeated_values(), {}));
}

}  // namespace

ClosedSetApprox cluster_samples(std::span<const double> samples, Window window, double resolution) {
  std::vector<double> v;
  v.reserve(samples.size());
  for (double x : samples) {
    if (window.contains(x)) v.push_back(x);
  }
  std::sort(v.begin(), v.end());
  std::vector<double> points;
  std::vector<Interval> intervals;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= v.size(); ++i) {
    if (i < v.size() && v[i] - v[i - 1] <= resolution) continue;
    if (v[start] == v[i - 1]) {
      points.push_back(v[start]);
    } else {
      intervals.push_back({v[start], v[i - 1]});
    }
    start = i;
  }
  return {window, std::move(points), std::move(intervals)};
}

ClosedSetApprox spectrum(const OperatorSpec& a, const SpectralParams& params) {
  if (params.horizon < 1) throw DomainError("spectrum: horizon must be >= 1");
  const std::vector<double> samples = a.sample(params.horizon);
  const ClosedSetApprox sampled = cluster_samples(samples, params.window, params.resolution);
  const ClosedSetApprox full = unite(sampled, declared_essential(a, params.window));
  return full.with_flags(!a.meta().bounded_above, !a.meta().bounded_below);
}

ClosedSetApprox essential_spectrum(const OperatorSpec& a, const SpectralParams& params) {
  const ConsistencyReport report = a.seq.check_consistency(consistency_for(params));
  if (!report.ok) {
    std::string msg = "inconsistent metadata for '" + a.label() + "':";
    for (const auto& p : report.problems) msg += " " + p + ";";
    throw MetadataError(msg);
  }
  return declared_essential(a, params.window).with_flags(!a.meta().bounded_above, !a.meta().bounded_below);
}

SpectrumReport spectral_report(const OperatorSpec& a, const SpectralParams& params) {
  SpectrumReport rep{spectrum(a, params), essential_spectrum(a, params), {}};
  const std::size_t prefix_len = a.seq.prefix().size();
  std::map<double, DiscreteEigenvalue> counts;
  for (std::uint64_t n = 1; n <= params.horizon; ++n) {
    const double v = a.eval(n);
    if (!params.window.contains(v) || rep.essential.contains(v)) continue;
    auto& e = counts[v];
    e.value = v;
    ++e.multiplicity;
    if (n > prefix_len) e.at_least = true;
  }
  for (auto& [v, e] : counts) rep.discrete.push_back(e);
  return rep;
}

SigmaBar sigma_bar(const OperatorSpec& a, const SpectralParams& params) {
  return {essential_spectrum(a, params), a.meta().bounded() ? 0 : 1};
}

bool is_compact_resolvent(const OperatorSpec& a) {
  const TailMeta& m = a.meta();
  return m.accumulation.abs_divergent && m.accumulation.empty() && a.seq.repeated_values().empty();
}

std::vector<std::uint64_t> weyl_witnesses(const OperatorSpec& a, double lambda, double eps, std::size_t count,
                                          std::uint64_t horizon) {
  if (!(eps > 0.0)) throw DomainError("weyl_witnesses: eps must be > 0");
  if (count < 1) throw DomainError("weyl_witnesses: count must be >= 1");
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= horizon && out.size() < count; ++n) {
    if (std::abs(a.eval(n) - lambda) < eps) out.push_back(n);
  }
  return out;
}

PerturbationIntersection ess_via_perturbations(const OperatorSpec& a,
                                               std::span<const FiniteRankDiagonal> perturbations,
                                               const SpectralParams& params) {
  const ClosedSetApprox base = spectrum(a, params);
  ClosedSetApprox acc = base;
  for (const FiniteRankDiagonal& k : perturbations) acc = intersect(acc, spectrum(perturbed(a, k), params));
  PerturbationIntersection out{acc, {}};
  for (double p : base.points()) {
    if (!acc.contains(p)) out.eliminated_points.push_back(p);
  }
  return out;
}

}  // namespace wvn
