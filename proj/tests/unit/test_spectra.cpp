#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wvn/error.hpp"
#include "wvn/families.hpp"
#include "wvn/pairing.hpp"
#include "wvn/spectra.hpp"

using namespace wvn;

namespace {

FamilyParams with_t(double t) {
  FamilyParams p;
  p.t = t;
  return p;
}

SpectralParams in_window(double lo, double hi) {
  SpectralParams sp;
  sp.window = {lo, hi};
  return sp;
}

ClosedSetApprox random_set(std::mt19937_64& rng, Window w) {
  std::uniform_real_distribution<double> u(w.lo, w.hi);
  std::uniform_int_distribution<int> count(0, 4);
  std::vector<double> pts;
  std::vector<Interval> ivs;
  for (int i = count(rng); i > 0; --i) pts.push_back(std::round(u(rng) * 4) / 4);
  for (int i = count(rng); i > 0; --i) {
    double x = std::round(u(rng) * 4) / 4, y = std::round(u(rng) * 4) / 4;
    if (x > y) std::swap(x, y);
    ivs.push_back({x, y});
  }
  return {w, pts, ivs, rng() % 2 == 0, rng() % 2 == 0};
}

// Families with random parameters plus two-valued parity generators.
OperatorSpec random_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FamilyParams p;
  switch (rng() % 8) {
    case 0: p.t = 0.1 + 0.8 * u(rng); return make_family("A_t", p);
    case 1: p.t = u(rng); return make_family("B_t", p);
    case 2: p.value = std::round(40 * u(rng) - 20); return make_family("constant", p);
    case 3: return make_family("example41_A");
    case 4: p.bound = 0.5 + 3 * u(rng); return make_family("rationals", p);
    case 5: p.s = 0.5 * u(rng); p.t = p.s + 0.5 * u(rng); return make_family("K0", p);
    case 6: p.offset = std::round(10 * u(rng)); return make_family("alternating", p);
    default: {
      const double c1 = std::round(20 * u(rng) - 10), c2 = std::round(20 * u(rng) - 10);
      std::vector<double> pts = {std::min(c1, c2), std::max(c1, c2)};
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      return oracle::from_generator("if even(n) then " + std::to_string(c1) + " else " + std::to_string(c2),
                                    oracle::point_meta(pts), "parity");
    }
  }
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("spectrum") {
  FamilyParams zero;
  const ClosedSetApprox s0 = spectrum(make_family("constant", zero));
  CHECK(s0.points() == std::vector<double>{0.0});
  CHECK(s0.intervals().empty());

  const ClosedSetApprox rat = spectrum(make_family("rationals"));
  REQUIRE(rat.intervals().size() == 1);
  CHECK(rat.intervals()[0] == Interval{-1.0, 1.0});
  CHECK(rat.points().empty());

  // B_1 on [0, 4]: every sampled value is some k + 1/(m+2), and 1..4 are present
  const OperatorSpec b1 = make_family("B_t", with_t(1.0));
  const ClosedSetApprox sb = spectrum(b1, in_window(0, 4));
  for (double k = 1; k <= 4; ++k) CHECK(sb.contains(k));
  for (double x : sb.points()) {
    const double k = std::floor(x);
    if (x == k) continue;
    const double m = 1.0 / (x - k) - 2.0;
    CHECK(std::abs(m - std::round(m)) < 1e-6);
  }
  CHECK(sb.unbounded_above());
}

TEST_CASE("essential spectrum") {
  for (double t : {0.3, 0.5, 0.7}) CHECK(essential_spectrum(make_family("A_t", with_t(t))).empty());
  const ClosedSetApprox eb = essential_spectrum(make_family("B_t"), in_window(0, 5));
  CHECK(eb.points() == std::vector<double>{1, 2, 3, 4, 5});
  CHECK(eb.intervals().empty());
  CHECK(essential_spectrum(make_family("example41_A")).points() == std::vector<double>{0.0});
  CHECK(essential_spectrum(make_family("example41_B")).points() == std::vector<double>{0.0});

  // repeated generator values count even without declared points
  TailMeta meta;
  meta.accumulation.points = {3.0};
  const OperatorSpec parity = oracle::from_generator("if even(n) then 3 else 3", meta, "three");
  CHECK(essential_spectrum(parity).points() == std::vector<double>{3.0});

  const OperatorSpec bad = oracle::from_generator("0", oracle::point_meta({5.0}), "bad");
  CHECK_THROWS_AS(essential_spectrum(bad), MetadataError);
}

TEST_CASE("sigma bar") {
  const SigmaBar a = sigma_bar(make_family("example41_A"));
  CHECK(a.ess.points() == std::vector<double>{0.0});
  CHECK(a.unbounded_bit == 1);
  const SigmaBar b = sigma_bar(make_family("example41_B"));
  CHECK(b.ess.points() == std::vector<double>{0.0});
  CHECK(b.unbounded_bit == 0);
  FamilyParams seven;
  seven.value = 7.0;
  const SigmaBar c = sigma_bar(make_family("constant", seven));
  CHECK(c.ess.points() == std::vector<double>{7.0});
  CHECK(c.unbounded_bit == 0);
}

TEST_CASE("compact resolvent") {
  CHECK(is_compact_resolvent(make_family("A_t")));
  CHECK_FALSE(is_compact_resolvent(make_family("B_t")));
  CHECK_FALSE(is_compact_resolvent(make_family("constant")));
  CHECK(is_compact_resolvent(make_family("alternating")));
}

TEST_CASE("compact resolvent iff empty essential spectrum, across built-ins") {
  for (const auto& name : family_names()) {
    const OperatorSpec op = make_family(name);
    CHECK_MESSAGE(is_compact_resolvent(op) == essential_spectrum(op).empty(), name);
  }
}

TEST_CASE("Weyl witnesses") {
  const OperatorSpec b1 = make_family("B_t", with_t(1.0));
  const auto w = weyl_witnesses(b1, 1.0, 0.1, 3);
  REQUIRE(w.size() == 3);
  // <1, m> with 1/(m+2) < 0.1, i.e. m >= 9
  CHECK(w[0] == pair_encode(1, 9));
  CHECK(w[1] == pair_encode(1, 10));
  CHECK(w[2] == pair_encode(1, 11));

  const auto z = weyl_witnesses(make_family("constant"), 0.0, 1e-9, 4);
  CHECK(z == std::vector<std::uint64_t>{1, 2, 3, 4});

  CHECK(weyl_witnesses(make_family("A_t", with_t(0.5)), 0.0, 0.5, 3).empty());
}

TEST_CASE("intersections") {
  const Window w{-5, 5};
  CHECK(intersect(ClosedSetApprox(w, {}, {{0, 2}}), ClosedSetApprox(w, {}, {{1, 3}})).intervals() ==
        std::vector<Interval>{{1, 2}});
  CHECK(intersect(ClosedSetApprox(w, {0, 1}, {}), ClosedSetApprox(w, {1, 2}, {})).points() == std::vector<double>{1});
  CHECK_THROWS_AS(intersect(ClosedSetApprox(w), ClosedSetApprox(Window{-1, 1})), DomainError);
  CHECK_THROWS_AS(intersect_closed({}), DomainError);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const ClosedSetApprox x = random_set(rng, w), y = random_set(rng, w), z = random_set(rng, w);
    const ClosedSetApprox full = ClosedSetApprox::full(w).with_flags(true, true);
    CHECK(intersect(x, full) == x);
    CHECK(intersect(x, y) == intersect(y, x));
    CHECK(intersect(intersect(x, y), z) == intersect(x, intersect(y, z)));
    CHECK(intersect(x, x) == x);
    const ClosedSetApprox xs[] = {x, y, z};
    CHECK(intersect_closed(xs) == intersect(intersect(x, y), z));
  }
}

TEST_CASE("intersection over perturbations") {
  const OperatorSpec b1 = make_family("B_t", with_t(1.0));
  SpectralParams sp;
  // move the k = 1 eigenvalues inside (0.5, 1.5) up by 10
  FiniteRankDiagonal k;
  for (std::uint64_t n = 1; n <= sp.horizon; ++n) {
    const double v = b1.eval(n);
    if (v > 0.5 && v < 1.5) k.push_back({n, 10.0});
  }
  const std::vector<FiniteRankDiagonal> ks = {k};
  const PerturbationIntersection r = ess_via_perturbations(b1, ks, sp);
  const ClosedSetApprox local = intersect(r.result, ClosedSetApprox(sp.window, {}, {{0.5, 1.5}}));
  CHECK(local.points() == std::vector<double>{1.0});
  CHECK(local.intervals().empty());
  CHECK_FALSE(r.eliminated_points.empty());
  CHECK(local.contains(1.0));
  CHECK_FALSE(local.contains(4.0 / 3.0));

  CHECK(ess_via_perturbations(b1, {}, sp).result == spectrum(b1, sp));

  const OperatorSpec zero = make_family("constant");
  std::mt19937_64 rng(9);
  std::vector<FiniteRankDiagonal> random_ks(5);
  for (auto& kk : random_ks) {
    for (int j = 0; j < 6; ++j) kk.push_back({1 + rng() % 100, double(rng() % 7) - 3.0});
  }
  CHECK(ess_via_perturbations(zero, random_ks).result.contains(0.0));
}

TEST_CASE("essential spectrum properties on randomized specs") {
  std::mt19937_64 rng(23);
  SpectralParams sp;
  sp.horizon = 1024;
  for (int i = 0; i < 100; ++i) {
    const OperatorSpec op = random_spec(rng);
    const ClosedSetApprox ess = essential_spectrum(op, sp);
    CHECK_MESSAGE(ess.subset_of(spectrum(op, sp), 1e-12), op.label());

    FiniteRankDiagonal k;
    for (int j = 0; j < 5; ++j) k.push_back({1 + rng() % 500, double(rng() % 41) - 20.0});
    const OperatorSpec pk = perturbed(op, k);
    CHECK_MESSAGE(essential_spectrum(pk, sp) == ess, op.label());

    const std::vector<FiniteRankDiagonal> ks = {k};
    CHECK(ess.subset_of(ess_via_perturbations(op, ks, sp).result, 1e-12));
  }
}

TEST_CASE("spectral report") {
  const SpectrumReport r = spectral_report(make_family("B_t", with_t(1.0)), in_window(0, 3));
  CHECK(r.essential.subset_of(r.spectrum));
  for (const auto& d : r.discrete) {
    CHECK_FALSE(r.essential.contains(d.value, 1e-12));
    CHECK(d.multiplicity >= 1);
  }
  CHECK_FALSE(r.discrete.empty());
}

}  // TEST_SUITE
