// wvn: command-line front end over the wvn library.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wvn/domains.hpp"
#include "wvn/eps_net.hpp"
#include "wvn/equivalence.hpp"
#include "wvn/error.hpp"
#include "wvn/families.hpp"
#include "wvn/json_io.hpp"
#include "wvn/matching.hpp"
#include "wvn/metrics.hpp"
#include "wvn/reproduce.hpp"
#include "wvn/spectra.hpp"
#include "wvn/turbulence.hpp"

namespace {

using wvn::Json;

constexpr const char* kVersion = "0.1.0";

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wvn::ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw wvn::ParseError(path + ": " + e.what());
  }
}

// A JSON spec file or a built-in family with parameters.
struct OperatorArgs {
  std::string spec;
  std::string family;
  wvn::FamilyParams params;

  void attach(CLI::App* app, const std::string& suffix) {
    auto* s = app->add_option("--spec" + suffix, spec, "operator spec JSON file");
    auto* f = app->add_option("--family" + suffix, family, "built-in family");
    s->excludes(f);
    app->add_option("--t" + suffix, params.t, "A_t, B_t, K0 parameter t");
    app->add_option("--s" + suffix, params.s, "K0 parameter s");
    app->add_option("--pred" + suffix, params.predicate, "A_F index-set predicate");
    app->add_option("--M" + suffix, params.bound, "rationals window bound");
    app->add_option("--variant" + suffix, params.variant, "rationals enumeration order (0 or 1)");
    app->add_option("--value" + suffix, params.value, "constant value");
    app->add_option("--offset" + suffix, params.offset, "alternating offset");
    app->add_option("--basis" + suffix, params.basis, "basis label");
  }

  wvn::OperatorSpec resolve(const std::string& which) const {
    if (!spec.empty()) return wvn::operator_from_json(read_json_file(spec));
    if (family.empty()) throw wvn::ParseError("operator " + which + ": give --spec or --family");
    const auto& names = wvn::family_names();
    if (std::find(names.begin(), names.end(), family) == names.end()) {
      throw wvn::SemanticError("unknown family '" + family + "'");
    }
    return wvn::make_family(family, params);
  }

  Json echo() const {
    if (!spec.empty()) return {{"spec", spec}};
    return {{"family", family},       {"t", params.t},           {"s", params.s},
            {"pred", params.predicate}, {"M", params.bound},       {"variant", params.variant},
            {"value", params.value},    {"offset", params.offset}, {"basis", params.basis}};
  }
};

struct Common {
  std::uint64_t horizon = wvn::kDefaultHorizon;
  std::vector<double> window = {-wvn::kDefaultWindowBound, wvn::kDefaultWindowBound};
  double resolution = wvn::kDefaultResolution;
  std::string out;
  std::string format = "json";
  bool timing = false;

  wvn::SpectralParams spectral() const {
    if (!(window[0] < window[1])) throw wvn::DomainError("--window: lo must be below hi");
    wvn::SpectralParams p;
    p.window = {window[0], window[1]};
    p.horizon = horizon;
    p.resolution = resolution;
    return p;
  }

  Json echo_spectral() const { return {{"horizon", horizon}, {"window", window}, {"resolution", resolution}}; }
};

struct Outcome {
  Json config = Json::object();
  Json result;
  Json provenance = Json::object();
  Json metadata = Json::object();  // wall times; only written with --timing
  std::string csv;                 // command-specific CSV; flattened result when empty
  int exit_code = 0;
};

void add_common(CLI::App* app, Common& c, bool spectral) {
  if (spectral) {
    app->add_option("--window", c.window, "window lo hi")->expected(2);
    app->add_option("--resolution", c.resolution, "clustering resolution");
  }
  app->add_option("--out", c.out, "output path (stdout when absent)");
  app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_flag("--timing", c.timing, "record wall time under \"metadata\"");
}

// Flattens a JSON value into "path,value" rows.
void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ',' << j.dump() << '\n';
  }
}

std::string set_csv(const Json& set) {
  std::ostringstream out;
  out << "kind,lo,hi\n";
  for (const auto& p : set.at("points")) out << "point," << p.dump() << ',' << p.dump() << '\n';
  for (const auto& iv : set.at("intervals")) out << "interval," << iv[0].dump() << ',' << iv[1].dump() << '\n';
  return out.str();
}

std::string plan_csv(const wvn::PermutationPlan& plan, const std::vector<double>& a, const std::vector<double>& b) {
  std::ostringstream out;
  out << "index,pi,b,a_pi,cost\n";
  out.precision(17);
  for (std::size_t n = 0; n < plan.size(); ++n) {
    const double ap = a[plan.pi[n]];
    out << n + 1 << ',' << plan.pi[n] + 1 << ',' << b[n] << ',' << ap << ',' << std::abs(ap - b[n]) << '\n';
  }
  return out.str();
}

void emit(const std::string& command, const Common& c, Outcome& o, double seconds) {
  o.provenance["version"] = kVersion;
  Json doc = {{"command", command}, {"config", o.config}, {"result", o.result}, {"provenance", o.provenance}};
  if (c.timing) {
    o.metadata["seconds"] = seconds;
    doc["metadata"] = o.metadata;
  }
  std::string text;
  if (c.format == "csv") {
    if (o.csv.empty()) {
      std::ostringstream s;
      s << "key,value\n";
      flatten(o.result, "", s);
      o.csv = s.str();
    }
    text = o.csv;
  } else {
    text = doc.dump(2) + "\n";
  }
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) throw wvn::ParseError("cannot write '" + c.out + "'");
    f << text;
  }
}

// "idx:shift,idx:shift,..."
wvn::FiniteRankDiagonal parse_shifts(const std::string& text) {
  wvn::FiniteRankDiagonal out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw wvn::ParseError("--B: expected idx:shift, got '" + item + "'");
    try {
      std::size_t used = 0;
      const unsigned long long idx = std::stoull(item.substr(0, colon), &used);
      if (used != colon || idx == 0) throw std::invalid_argument("index");
      const std::string v = item.substr(colon + 1);
      const double shift = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument("shift");
      out.push_back({idx, shift});
    } catch (const std::logic_error&) {
      throw wvn::ParseError("--B: malformed entry '" + item + "'");
    }
  }
  return out;
}

Eigen::MatrixXcd read_matrix(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    return wvn::matrix_from_json(read_json_file(path));
  }
  std::ifstream in(path);
  if (!in) throw wvn::ParseError("cannot open '" + path + "'");
  return wvn::read_matrix_csv(in);
}

struct Command {
  CLI::App* app = nullptr;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wvn: essential spectra, distances and unitary-orbit constructions for diagonal operators"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  OperatorArgs opa, opb;
  std::vector<Command> commands;

  auto add = [&](const std::string& name, const std::string& help, int operators, bool spectral,
                 std::function<Outcome()> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (operators >= 1) opa.attach(sub, "");
    if (operators >= 2) opb.attach(sub, "-b");
    if (operators >= 1 || spectral) sub->add_option("--horizon", common.horizon, "indices sampled");
    add_common(sub, common, spectral);
    commands.push_back({sub, std::move(fn)});
    return sub;
  };

  // ess / spectrum / sigma-bar
  add("ess", "essential spectrum", 1, true, [&] {
    Outcome o;
    const auto op = opa.resolve("A");
    const auto set = wvn::essential_spectrum(op, common.spectral());
    o.config = {{"operator", opa.echo()}};
    o.result = {{"label", op.label()}, {"essential_spectrum", wvn::to_json(set)}};
    o.provenance = common.echo_spectral();
    o.csv = set_csv(o.result["essential_spectrum"]);
    return o;
  });
  add("spectrum", "spectrum, essential spectrum and discrete eigenvalues", 1, true, [&] {
    Outcome o;
    const auto op = opa.resolve("A");
    const auto rep = wvn::spectral_report(op, common.spectral());
    o.config = {{"operator", opa.echo()}};
    o.result = wvn::to_json(rep);
    o.provenance = common.echo_spectral();
    o.csv = set_csv(o.result["spectrum"]);
    return o;
  });
  add("sigma-bar", "essential spectrum with the unbounded bit", 1, true, [&] {
    Outcome o;
    const auto op = opa.resolve("A");
    const auto sb = wvn::sigma_bar(op, common.spectral());
    o.config = {{"operator", opa.echo()}};
    o.result = wvn::to_json(sb);
    o.provenance = common.echo_spectral();
    return o;
  });

  // dist
  std::string metric = "nrt";
  wvn::MetricParams mp;
  std::string tail_mode = "ignore";
  {
    auto* sub = add("dist", "SRT or NRT distance", 2, false, [&] {
      Outcome o;
      const auto a = opa.resolve("A"), b = opb.resolve("B");
      o.config = {{"operator_a", opa.echo()}, {"operator_b", opb.echo()}, {"metric", metric}};
      if (metric == "nrt") {
        o.result = wvn::to_json(wvn::nrt_distance(a, b, common.horizon));
        o.provenance = {{"horizon", common.horizon}};
      } else {
        mp.tail_bound_mode = tail_mode == "metadata" ? wvn::TailBoundMode::MetadataBound : wvn::TailBoundMode::Ignore;
        o.result = wvn::to_json(wvn::srt_distance(a, b, mp));
        o.provenance = {{"n_max", mp.n_max}, {"m_max", mp.m_max}, {"tail_bound", tail_mode}};
      }
      return o;
    });
    sub->add_option("--metric", metric, "nrt or srt")->check(CLI::IsMember({"nrt", "srt"}));
    sub->add_option("--n-max", mp.n_max, "SRT: basis vectors summed");
    sub->add_option("--m-max", mp.m_max, "SRT: sup over |t| <= m for m <= m-max");
    sub->add_option("--tail-bound", tail_mode, "SRT truncation bound: ignore or metadata")
        ->check(CLI::IsMember({"ignore", "metadata"}));
  }

  // match / wvn
  std::size_t match_n = 64;
  {
    auto* sub = add("match", "bottleneck matching of the first N eigenvalues", 2, false, [&] {
      Outcome o;
      const auto a = opa.resolve("A"), b = opb.resolve("B");
      wvn::require_same_basis(a, b, "match");
      const auto as = a.sample(match_n), bs = b.sample(match_n);
      const auto plan = wvn::bottleneck_match(as, bs);
      o.config = {{"operator_a", opa.echo()}, {"operator_b", opb.echo()}, {"n", match_n}};
      o.result = wvn::to_json(plan);
      o.provenance = {{"n", match_n}};
      o.csv = plan_csv(plan, as, bs);
      return o;
    });
    sub->add_option("--n", match_n, "eigenvalues matched");
  }
  {
    auto* sub = add("wvn", "permutation plan with compact-difference certificate", 2, false, [&] {
      Outcome o;
      const auto a = opa.resolve("A"), b = opb.resolve("B");
      const auto w = wvn::wvn_construct(a, b, match_n);
      o.config = {{"operator_a", opa.echo()}, {"operator_b", opb.echo()}, {"n", match_n}};
      o.result = wvn::to_json(w);
      o.provenance = {{"n", match_n}};
      o.csv = plan_csv(w.plan, a.sample(match_n), b.sample(match_n));
      return o;
    });
    sub->add_option("--n", match_n, "eigenvalues matched");
  }

  add("ucres", "equivalence via essential spectrum and unbounded bit", 2, true, [&] {
    Outcome o;
    const auto a = opa.resolve("A"), b = opb.resolve("B");
    o.config = {{"operator_a", opa.echo()}, {"operator_b", opb.echo()}};
    o.result = wvn::to_json(wvn::ucres_equivalent(a, b, common.spectral()));
    o.provenance = common.echo_spectral();
    return o;
  });

  wvn::RelCompactParams rcp;
  {
    auto* sub = add("relcompact", "is K (A - i)^-1 compact; K is the first operator, A the second", 2, false, [&] {
      Outcome o;
      const auto k = opa.resolve("K"), a = opb.resolve("A");
      rcp.horizon = common.horizon;
      o.config = {{"operator_k", opa.echo()}, {"operator_a", opb.echo()}};
      o.result = wvn::to_json(wvn::relatively_compact_check(k, a, rcp));
      o.provenance = {{"horizon", rcp.horizon}, {"resolution", rcp.resolution}, {"delta", rcp.delta},
                      {"cluster_min", rcp.cluster_min}};
      return o;
    });
    sub->add_option("--resolution", rcp.resolution, "clustering resolution");
    sub->add_option("--delta", rcp.delta, "neighbourhood of 0");
  }

  // bands / fw
  std::size_t band_n = 16;
  std::string convention = "shifted";
  std::uint64_t band_horizon = wvn::kBandHorizon;
  auto band_conv = [&] {
    return convention == "inverse" ? wvn::BandConvention::Inverse : wvn::BandConvention::Shifted;
  };
  {
    auto* sub = app.add_subcommand("bands", "dyadic band dimensions d_0..d_n");
    opa.attach(sub, "");
    add_common(sub, common, false);
    sub->add_option("--n-max", band_n, "last band");
    sub->add_option("--horizon", band_horizon, "indices enumerated");
    sub->add_option("--convention", convention, "shifted or inverse")
        ->check(CLI::IsMember({"shifted", "inverse"}));
    commands.push_back({sub, [&] {
                          Outcome o;
                          const auto op = opa.resolve("A");
                          const auto prof = wvn::band_profile(op, band_n, band_horizon, band_conv());
                          o.config = {{"operator", opa.echo()}, {"n_max", band_n}, {"convention", convention}};
                          o.result = wvn::to_json(prof);
                          o.provenance = {{"horizon", band_horizon}, {"horizon_used", prof.horizon}};
                          std::ostringstream csv;
                          csv << "n,d_n,kind\n";
                          for (std::size_t n = 0; n < prof.dims.size(); ++n) {
                            const auto& d = prof.dims[n];
                            csv << n << ',' << d.count << ','
                                << (d.kind == wvn::BandKind::Exact ? "exact"
                                                                   : d.kind == wvn::BandKind::AtLeast ? "at_least" : "cap")
                                << '\n';
                          }
                          o.csv = csv.str();
                          return o;
                        }});
  }
  std::uint64_t fw_k = 5, fw_n = 256, fw_l = 64;
  std::string profile_a, profile_b;
  {
    auto* sub = app.add_subcommand("fw", "k-shift band inequalities between two operators");
    opa.attach(sub, "");
    opb.attach(sub, "-b");
    add_common(sub, common, false);
    sub->add_option("--profile", profile_a, "band profile JSON instead of the first operator");
    sub->add_option("--profile-b", profile_b, "band profile JSON instead of the second operator");
    sub->add_option("--k-max", fw_k);
    sub->add_option("--n-max", fw_n);
    sub->add_option("--l-max", fw_l);
    sub->add_option("--horizon", band_horizon, "indices enumerated per profile");
    sub->add_option("--convention", convention, "shifted or inverse")
        ->check(CLI::IsMember({"shifted", "inverse"}));
    commands.push_back({sub, [&] {
                          Outcome o;
                          const std::size_t need = fw_n + fw_l + fw_k;
                          auto profile = [&](const std::string& file, const OperatorArgs& args, const char* which) {
                            if (!file.empty()) return wvn::band_profile_from_json(read_json_file(file));
                            return wvn::band_profile(args.resolve(which), need, band_horizon, band_conv());
                          };
                          const auto p = profile(profile_a, opa, "P");
                          const auto q = profile(profile_b, opb, "Q");
                          const auto v = wvn::fw_decide(p, q, fw_k, fw_n, fw_l);
                          o.config = {{"operator_a", profile_a.empty() ? opa.echo() : Json{{"profile", profile_a}}},
                                      {"operator_b", profile_b.empty() ? opb.echo() : Json{{"profile", profile_b}}},
                                      {"convention", convention}};
                          o.result = wvn::to_json(v);
                          o.provenance = {{"k_max", fw_k}, {"n_max", fw_n}, {"l_max", fw_l},
                                          {"horizons", {p.horizon, q.horizon}}};
                          return o;
                        }});
  }

  add("dom-eq", "domain equality for a co-diagonal pair", 2, false, [&] {
    Outcome o;
    const auto a = opa.resolve("A"), b = opb.resolve("B");
    o.config = {{"operator_a", opa.echo()}, {"operator_b", opb.echo()}};
    o.result = wvn::to_json(wvn::domains_equal_codiag(a, b, common.horizon));
    o.provenance = {{"horizon", common.horizon}, {"ratio_limit", wvn::kDomainRatioLimit}};
    return o;
  });

  double ob_s = 0.0, ob_t = 1.0;
  std::uint64_t grid = 100;
  {
    auto* sub = app.add_subcommand("obstruction", "min |k - l + t/3 - s/(m+2)| over a grid");
    add_common(sub, common, false);
    sub->add_option("--s", ob_s);
    sub->add_option("--t", ob_t);
    sub->add_option("--grid", grid, "k, l, m range 1..grid");
    commands.push_back({sub, [&] {
                          Outcome o;
                          o.config = {{"s", ob_s}, {"t", ob_t}, {"grid", grid}};
                          o.result = wvn::to_json(wvn::b_t_obstruction(ob_s, ob_t, grid, grid, grid));
                          o.result["bound"] = (ob_t - ob_s) / 3.0;
                          o.provenance = {{"k_max", grid}, {"l_max", grid}, {"m_max", grid}};
                          return o;
                        }});
  }

  double walk_delta = 0.5, walk_r = 0.1;
  std::uint64_t walk_horizon = 512;
  {
    auto* sub = app.add_subcommand("walk", "local orbit walk between unbounded operators");
    opa.attach(sub, "");
    opb.attach(sub, "-b");
    add_common(sub, common, false);
    sub->add_option("--delta", walk_delta, "radius of U");
    sub->add_option("--r", walk_r, "step norm bound");
    sub->add_option("--horizon", walk_horizon);
    commands.push_back({sub, [&] {
                          Outcome o;
                          const auto a = opa.resolve("A"), b = opb.resolve("B");
                          const auto w = wvn::orbit_walk_unbounded(a, b, walk_delta, walk_r, walk_horizon);
                          o.config = {{"operator_a", opa.echo()}, {"operator_b", opb.echo()}};
                          o.result = wvn::to_json(w);
                          o.result["check"] = wvn::to_json(wvn::verify_walk(w, &a));
                          o.provenance = {{"delta", walk_delta}, {"r", walk_r}, {"horizon", walk_horizon}};
                          std::ostringstream csv;
                          csv.precision(17);
                          csv << "step,distance\n";
                          for (std::size_t l = 0; l < w.distances.size(); ++l) csv << l + 1 << ',' << w.distances[l] << '\n';
                          o.csv = csv.str();
                          return o;
                        }});
  }

  std::string b_text;
  std::uint64_t probes = 8;
  double walk_eps = 1.0;
  {
    auto* sub = app.add_subcommand("walk0", "walk from 0 towards a finite-rank diagonal B");
    add_common(sub, common, false);
    sub->add_option("--B", b_text, "idx:shift,idx:shift,...")->required();
    sub->add_option("--probes", probes, "basis vectors probed");
    sub->add_option("--eps", walk_eps);
    sub->add_option("--r", walk_r, "step norm bound");
    commands.push_back({sub, [&] {
                          Outcome o;
                          const auto bmat = parse_shifts(b_text);
                          const auto w = wvn::orbit_walk_compact_at_zero(bmat, probes, walk_eps, walk_r);
                          o.config = {{"B", b_text}};
                          o.result = wvn::to_json(w);
                          o.result["check"] = wvn::to_json(wvn::verify_walk(w, nullptr));
                          o.provenance = {{"eps", walk_eps}, {"r", walk_r}, {"probes", probes}};
                          return o;
                        }});
  }

  std::string matrix_path;
  double net_eps = 0.1;
  {
    auto* sub = app.add_subcommand("epsnet", "compact K putting the spectrum of A + K on eps Z");
    add_common(sub, common, false);
    sub->add_option("--matrix", matrix_path, "CSV (real) or JSON {re, im} matrix")->required();
    sub->add_option("--eps", net_eps);
    commands.push_back({sub, [&] {
                          Outcome o;
                          const auto res = wvn::eps_net_diagonalize(read_matrix(matrix_path), net_eps);
                          o.config = {{"matrix", matrix_path}};
                          o.result = wvn::to_json(res);
                          o.provenance = {{"eps", net_eps}, {"hermitian_tolerance", wvn::kHermitianTolerance}};
                          return o;
                        }});
  }

  wvn::reproduce::Options ro;
  bool all = false;
  std::vector<int> criteria;
  {
    auto* sub = app.add_subcommand("reproduce", "run the acceptance suite");
    add_common(sub, common, false);
    sub->add_flag("--all", all, "every criterion");
    sub->add_option("--criterion", criteria, "criterion ids");
    sub->add_option("--walk-delta", ro.walk_delta, "radius of U for the walk criterion");
    sub->add_option("--jobs", ro.jobs, "worker threads");
    commands.push_back({sub, [&] {
                          Outcome o;
                          if (!all && criteria.empty()) throw wvn::ParseError("reproduce: give --all or --criterion");
                          const auto results = wvn::reproduce::run(ro, all ? std::vector<int>{} : criteria);
                          o.config = {{"criteria", all ? Json("all") : Json(criteria)}, {"walk_delta", ro.walk_delta}};
                          o.result = wvn::reproduce::report(results);
                          o.provenance = {{"walk_delta", ro.walk_delta}};
                          std::cerr << wvn::reproduce::summary_lines(results);
                          o.metadata["criteria"] = wvn::reproduce::timings(results)["seconds"];
                          o.exit_code = o.result["failed"].get<int>() == 0 ? 0 : 1;
                          return o;
                        }});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = cmd.run();
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      emit(cmd.app->get_name(), common, o, secs);
      return o.exit_code;
    } catch (const wvn::ParseError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    } catch (const wvn::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}
