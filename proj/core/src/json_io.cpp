#include "wvn/json_io.hpp"

#include <cmath>
#include <set>

#include "wvn/error.hpp"
#include "wvn/gen_expr.hpp"

namespace wvn {

namespace {

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
T get(const Json& j, const char* key, const std::string& where, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where + "." + key + ": " + e.what());
  }
}

double number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

std::vector<double> numbers(const Json& j, const char* key, const std::string& where) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  const Json& arr = j.at(key);
  if (!arr.is_array()) throw ParseError(where + "." + key + ": expected an array");
  for (const Json& v : arr) out.push_back(number(v, where + "." + key));
  return out;
}

std::vector<Interval> intervals(const Json& j, const char* key, const std::string& where) {
  std::vector<Interval> out;
  if (!j.contains(key)) return out;
  const Json& arr = j.at(key);
  if (!arr.is_array()) throw ParseError(where + "." + key + ": expected an array");
  for (const Json& v : arr) {
    if (!v.is_array() || v.size() != 2) throw ParseError(where + "." + key + ": expected [lo, hi] pairs");
    const double lo = number(v[0], where);
    const double hi = number(v[1], where);
    if (!(lo <= hi)) throw ParseError(where + "." + key + ": interval with lo > hi");
    out.push_back({lo, hi});
  }
  return out;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json interval_list(const std::vector<Interval>& iv) {
  Json arr = Json::array();
  for (const Interval& i : iv) arr.push_back({i.lo, i.hi});
  return arr;
}

Json shifts(const FiniteRankDiagonal& k) {
  Json arr = Json::array();
  for (const Shift& s : k) arr.push_back({{"idx", s.index}, {"shift", s.shift}});
  return arr;
}

Json one_based(const std::vector<std::size_t>& v) {
  Json arr = Json::array();
  for (std::size_t x : v) arr.push_back(x + 1);
  return arr;
}

Json rows(const Eigen::MatrixXd& m) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    arr.push_back(std::move(row));
  }
  return arr;
}

}  // namespace

std::string to_string(TailStatus s) { return s == TailStatus::Certified ? "certified" : "unverified"; }

Json to_json(const TailMeta& m) {
  Json progs = Json::array();
  for (const Progression& p : m.accumulation.progressions) progs.push_back({p.start, p.step});
  return {
      {"bounded_above", m.bounded_above},
      {"bounded_below", m.bounded_below},
      {"accumulation",
       {{"points", m.accumulation.points},
        {"intervals", interval_list(m.accumulation.intervals)},
        {"progressions", progs},
        {"abs_divergent", m.accumulation.abs_divergent}}},
      {"finitely_many_isolated", m.finitely_many_isolated},
  };
}

OperatorSpec operator_from_json(const Json& j) {
  check_keys(j, {"label", "basis", "prefix", "generator", "meta"}, "operator");
  const std::string label = get<std::string>(j, "label", "operator", "operator");
  const std::string basis = get<std::string>(j, "basis", "operator", "xi");
  const std::vector<double> prefix = numbers(j, "prefix", "operator");
  const std::string gen_text = get<std::string>(j, "generator", "operator", "0");
  GenExpr gen = parse_generator(gen_text);

  TailMeta meta;
  if (j.contains("meta")) {
    const Json& m = j.at("meta");
    check_keys(m, {"bounded_above", "bounded_below", "accumulation", "finitely_many_isolated"}, "meta");
    meta.bounded_above = get<bool>(m, "bounded_above", "meta", true);
    meta.bounded_below = get<bool>(m, "bounded_below", "meta", true);
    meta.finitely_many_isolated = get<bool>(m, "finitely_many_isolated", "meta", false);
    if (m.contains("accumulation")) {
      const Json& a = m.at("accumulation");
      check_keys(a, {"points", "intervals", "progressions", "abs_divergent"}, "accumulation");
      meta.accumulation.points = numbers(a, "points", "accumulation");
      meta.accumulation.intervals = intervals(a, "intervals", "accumulation");
      meta.accumulation.abs_divergent = get<bool>(a, "abs_divergent", "accumulation", false);
      if (a.contains("progressions")) {
        for (const Json& p : a.at("progressions")) {
          if (!p.is_array() || p.size() != 2) throw ParseError("accumulation.progressions: expected [start, step]");
          const double step = number(p[1], "progressions");
          if (step == 0.0) throw ParseError("accumulation.progressions: step must be nonzero");
          meta.accumulation.progressions.push_back({number(p[0], "progressions"), step});
        }
      }
    }
  }
  try {
    return {EigenvalueSequence(prefix, std::move(gen), std::move(meta), label), basis};
  } catch (const DomainError& e) {
    throw ParseError(std::string("operator: ") + e.what());
  }
}

Json to_json(const OperatorSpec& op) {
  return {
      {"label", op.label()},
      {"basis", op.basis},
      {"prefix", op.seq.prefix()},
      {"generator", op.seq.generator().to_string()},
      {"meta", to_json(op.meta())},
  };
}

Json to_json(const ClosedSetApprox& s) {
  return {
      {"window", {s.window().lo, s.window().hi}},
      {"points", s.points()},
      {"intervals", interval_list(s.intervals())},
      {"unbounded_above", s.unbounded_above()},
      {"unbounded_below", s.unbounded_below()},
  };
}

ClosedSetApprox closed_set_from_json(const Json& j) {
  check_keys(j, {"window", "points", "intervals", "unbounded_above", "unbounded_below"}, "closed set");
  const std::vector<double> w = numbers(j, "window", "closed set");
  if (w.size() != 2 || !(w[0] <= w[1])) throw ParseError("closed set: window must be [lo, hi]");
  return {Window{w[0], w[1]}, numbers(j, "points", "closed set"), intervals(j, "intervals", "closed set"),
          get<bool>(j, "unbounded_above", "closed set", false), get<bool>(j, "unbounded_below", "closed set", false)};
}

Json to_json(const BandProfile& p) {
  Json dims = Json::array();
  Json lower = Json::array();
  for (const BandDim& d : p.dims) {
    dims.push_back(d.kind == BandKind::Infinite ? Json("cap") : Json(d.count));
    lower.push_back(d.kind != BandKind::Exact);
  }
  return {
      {"dims", dims},
      {"lower_bounds", lower},
      {"growth", p.growth ? Json(p.growth->to_string()) : Json(nullptr)},
      {"label", p.label},
      {"horizon", p.horizon},
  };
}

BandProfile band_profile_from_json(const Json& j) {
  check_keys(j, {"dims", "lower_bounds", "growth", "label", "horizon", "caps"}, "band profile");
  BandProfile p;
  p.label = get<std::string>(j, "label", "band profile", "profile");
  p.horizon = get<std::uint64_t>(j, "horizon", "band profile", 0);
  if (j.contains("growth") && !j.at("growth").is_null()) {
    p.growth = parse_generator(get<std::string>(j, "growth", "band profile", "0"));
  }
  if (!j.contains("dims") || !j.at("dims").is_array()) throw ParseError("band profile: 'dims' array required");
  const Json& dims = j.at("dims");
  std::vector<bool> lower(dims.size(), false);
  if (j.contains("lower_bounds")) {
    const Json& lb = j.at("lower_bounds");
    if (!lb.is_array() || lb.size() != dims.size()) {
      throw ParseError("band profile: 'lower_bounds' must match 'dims' in length");
    }
    for (std::size_t i = 0; i < lb.size(); ++i) {
      if (!lb[i].is_boolean()) throw ParseError("band profile: 'lower_bounds' entries must be booleans");
      lower[i] = lb[i].get<bool>();
    }
  }
  std::vector<std::uint64_t> caps;
  if (j.contains("caps")) caps = get<std::vector<std::uint64_t>>(j, "caps", "band profile", {});
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const Json& d = dims[i];
    if (d.is_string() && d.get<std::string>() == "cap") {
      p.dims.push_back({i < caps.size() ? caps[i] : 0, BandKind::Infinite});
    } else if (d.is_number_unsigned() || (d.is_number_integer() && d.get<std::int64_t>() >= 0)) {
      p.dims.push_back({d.get<std::uint64_t>(), lower[i] ? BandKind::AtLeast : BandKind::Exact});
    } else {
      throw ParseError("band profile: dims[" + std::to_string(i) + "] must be a non-negative integer or \"cap\"");
    }
  }
  return p;
}

Json to_json(const OrbitWalk& w) {
  Json steps = Json::array();
  for (const auto& s : w.steps) steps.push_back(shifts(s));
  Json out = {
      {"kind", w.kind == WalkKind::Unbounded ? "unbounded" : "compact-at-zero"},
      {"base", w.base_label},
      {"target", w.target_label},
      {"steps", steps},
      {"length", w.steps.size()},
      {"distances", w.distances},
      {"delta", w.delta},
      {"r", w.r},
  };
  if (w.kind == WalkKind::Unbounded) {
    out["N"] = w.tail_start;
    out["p"] = w.p;
    out["m_p"] = w.m_p;
    out["target_distance"] = w.target_distance;
    out["tail"] = to_string(w.tail);
    out["tail_bound"] = w.tail_bound;
  } else {
    out["N"] = w.steps.size();
    out["norm"] = w.m_p;
    out["probe_distances"] = w.probe_distances;
  }
  return out;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  check_keys(j, {"re", "im"}, "matrix");
  auto read = [&](const char* key) {
    std::vector<std::vector<double>> m;
    try {
      m = j.at(key).get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("matrix.") + key + ": " + e.what());
    }
    return m;
  };
  if (!j.contains("re")) throw ParseError("matrix: 're' required");
  const auto re = read("re");
  const auto im = j.contains("im") ? read("im") : std::vector<std::vector<double>>{};
  const std::size_t n = re.size();
  if (n == 0) throw ParseError("matrix: empty");
  if (!im.empty() && im.size() != n) throw ParseError("matrix: 're' and 'im' differ in shape");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(re[0].size()));
  for (std::size_t i = 0; i < n; ++i) {
    if (re[i].size() != re[0].size() || (!im.empty() && im[i].size() != re[0].size())) {
      throw ParseError("matrix: ragged rows");
    }
    for (std::size_t k = 0; k < re[i].size(); ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = {re[i][k], im.empty() ? 0.0 : im[i][k]};
    }
  }
  return m;
}

Json to_json(const SigmaBar& s) { return {{"ess", to_json(s.ess)}, {"unbounded_bit", s.unbounded_bit}}; }

Json to_json(const SpectrumReport& r) {
  Json disc = Json::array();
  for (const auto& d : r.discrete) {
    disc.push_back({{"value", d.value}, {"multiplicity", d.multiplicity}, {"at_least", d.at_least}});
  }
  return {{"spectrum", to_json(r.spectrum)}, {"essential", to_json(r.essential)}, {"discrete", disc}};
}

Json to_json(const SrtDistance& d) { return {{"value", d.value}, {"truncation_bound", d.truncation_bound}}; }

Json to_json(const NrtDistance& d) {
  return {{"value", d.value},
          {"argmax", d.argmax},
          {"tail", to_string(d.tail)},
          {"tail_bound", d.tail_bound},
          {"head_dominates", d.head_dominates}};
}

Json to_json(const PermutationPlan& p) {
  return {{"size", p.size()},
          {"pi", one_based(p.pi)},
          {"bottleneck_cost", p.bottleneck_cost},
          {"tail_rule", std::string(to_string(p.tail_rule))},
          {"truncated", p.truncated}};
}

Json to_json(const CompactCertificate& c) {
  return {{"diag_entries", c.diag_entries},
          {"tail_sup_by_block", c.tail_sup_by_block},
          {"verdict", std::string(to_string(c.verdict))}};
}

Json to_json(const WvnConstruction& w) {
  return {{"plan", to_json(w.plan)}, {"certificate", to_json(w.certificate)}, {"global_cost", w.global_cost}};
}

Json to_json(const UcresResult& r) {
  return {{"equivalent", r.equivalent}, {"sigma_bar_a", to_json(r.a)}, {"sigma_bar_b", to_json(r.b)}};
}

Json to_json(const RelCompactReport& r) {
  return {{"compact", r.compact},
          {"sampled_ok", r.sampled_ok},
          {"metadata_route", r.metadata_route},
          {"block_route", r.block_route},
          {"max_gamma", r.max_gamma},
          {"argmax", r.argmax},
          {"block_sups", r.block_sups},
          {"gamma_set", to_json(r.gamma_set)}};
}

Json to_json(const ObstructionResult& r) {
  return {{"minimum", r.minimum}, {"argmin", {{"k", r.k}, {"l", r.l}, {"m", r.m}}}};
}

Json to_json(const FWVerdict& v) {
  Json wit = Json::array();
  for (const FWWitness& w : v.witnesses) {
    wit.push_back({{"k", w.k},
                   {"n", w.n},
                   {"l", w.l},
                   {"side", std::string(to_string(w.side))},
                   {"lhs", w.lhs},
                   {"rhs", w.rhs}});
  }
  Json per_k = Json::array();
  for (FWStatus s : v.per_k) per_k.push_back(s == FWStatus::Pass ? "pass" : (s == FWStatus::Fail ? "fail" : "uncertain"));
  Json out = {{"outcome", std::string(to_string(v.outcome))},
              {"witnesses", wit},
              {"per_k", per_k},
              {"horizon_used", {{"k_max", v.k_max}, {"n_max", v.n_max}, {"l_max", v.l_max}}}};
  if (v.outcome == FWOutcome::Equivalent) out["k"] = v.k;
  return out;
}

Json to_json(const DomainEquality& d) {
  return {{"equal", d.equal},
          {"ratio_sup", finite_or_null(d.ratio_sup)},
          {"ratio_inf", d.ratio_inf},
          {"ratio_at_horizon", d.ratio_at_horizon},
          {"log_spread", d.log_spread},
          {"drift", d.drift},
          {"bounds_agree", d.bounds_agree}};
}

Json to_json(const SignPartition& s) {
  return {{"nonnegative", s.nonnegative}, {"negative", s.negative}, {"both_infinite", s.both_infinite}};
}

Json to_json(const WalkCheck& c) {
  return {{"ok", c.ok},
          {"max_step_norm", c.max_step_norm},
          {"max_distance", c.max_distance},
          {"max_discrepancy", c.max_discrepancy},
          {"problems", c.problems}};
}

Json to_json(const EpsNetResult& r) {
  return {{"eigenvalues", r.eigenvalues},
          {"rounded", r.rounded},
          {"k_norm", r.k_norm},
          {"K", {{"re", rows(r.k.real())}, {"im", rows(r.k.imag())}}},
          {"u", {{"re", rows(r.u.real())}, {"im", rows(r.u.imag())}}}};
}

Json to_json(const PerturbationIntersection& r) {
  return {{"result", to_json(r.result)}, {"eliminated_points", r.eliminated_points}};
}

}  // namespace wvn
