#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wvn/domains.hpp"
#include "wvn/error.hpp"
#include "wvn/families.hpp"

using namespace wvn;

namespace {

OperatorSpec a_t(double t) {
  FamilyParams p;
  p.t = t;
  return make_family("A_t", p);
}

// Band of 2^(j^t) by the shifted convention, in long double.
std::int64_t a_t_band(std::uint64_t j, double t) {
  const long double x = std::pow(static_cast<long double>(j), static_cast<long double>(t));
  return static_cast<std::int64_t>(std::floor(x + std::log2(1.0L + std::exp2(-x))));
}

std::uint64_t band_sum(double t, std::int64_t lo, std::int64_t hi) {
  std::uint64_t c = 0;
  for (std::uint64_t j = 1;; ++j) {
    const auto b = a_t_band(j, t);
    if (b > hi) return c;
    if (b >= lo) ++c;
  }
}

BandProfile exact_profile(std::vector<std::uint64_t> dims, const std::string& label) {
  BandProfile p;
  for (auto d : dims) p.dims.push_back({d, BandKind::Exact});
  p.label = label;
  return p;
}

}  // namespace

TEST_SUITE("domains") {

TEST_CASE("band profile of A_1/2 under both conventions") {
  const BandProfile shifted = band_profile(a_t(0.5), 5, 4096);
  const BandProfile inverse = band_profile(a_t(0.5), 5, 4096, BandConvention::Inverse);
  std::vector<std::uint64_t> s, v;
  for (const auto& d : shifted.dims) s.push_back(d.count);
  for (const auto& d : inverse.dims) v.push_back(d.count);
  // direct enumeration of a_j = 2^sqrt(j)
  std::vector<std::uint64_t> s_oracle(6, 0), v_oracle(6, 0);
  for (std::uint64_t j = 1; j <= 200; ++j) {
    const double a = std::exp2(std::sqrt(double(j)));
    const auto bs = static_cast<std::size_t>(std::floor(std::log2(a + 1)));
    const auto bv = static_cast<std::size_t>(std::floor(std::log2(std::max(a, 1.0))));
    if (bs < 6) ++s_oracle[bs];
    if (bv < 6) ++v_oracle[bv];
  }
  CHECK(s == s_oracle);
  CHECK(v == v_oracle);
  CHECK(v[1] == 3);  // j = 1, 2, 3
  CHECK(s == std::vector<std::uint64_t>{0, 2, 5, 8, 9, 11});
}

TEST_CASE("band profile edge cases") {
  const BandProfile z = band_profile(make_family("constant"), 4, 1024);
  CHECK(z.dims[0].kind == BandKind::Infinite);
  for (std::size_t n = 1; n < z.dims.size(); ++n) CHECK(z.dims[n] == BandDim{0, BandKind::Exact});

  const OperatorSpec id = oracle::from_generator("n", oracle::divergent_meta(true, false), "n");
  const BandProfile p = band_profile(id, 9, 4096);
  CHECK(p.dims[0].count == 0);
  for (std::size_t n = 1; n <= 9; ++n) CHECK(p.dims[n].count == (std::uint64_t{1} << n));
}

TEST_CASE("bands partition the indices") {
  std::mt19937_64 rng(131);
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t horizon = 200 + rng() % 2000;
    const double c = 1.0 + double(rng() % 50);
    const OperatorSpec op = oracle::from_generator(std::to_string(c) + " * n", oracle::divergent_meta(true, false), "cn");
    const BandProfile p = band_profile(op, 40, horizon);
    std::uint64_t total = 0;
    for (const auto& d : p.dims) {
      CHECK(d.kind != BandKind::Infinite);
      total += d.count;
    }
    CHECK(total == horizon);
  }
}

TEST_CASE("k-shift inequalities: reflexive and an exact small case") {
  const BandProfile a = band_profile(a_t(0.5), 80);
  const FWVerdict self = fw_decide(a, a, 3, 40, 20);
  CHECK(self.outcome == FWOutcome::Equivalent);
  CHECK(self.k == 0);

  std::vector<std::uint64_t> ones(200, 1), alt(200, 0);
  for (std::size_t n = 1; n < alt.size(); n += 2) alt[n] = 2;
  const FWVerdict v = fw_decide(exact_profile(ones, "ones"), exact_profile(alt, "alt"), 3, 50, 50);
  CHECK(v.outcome == FWOutcome::Equivalent);
  CHECK(v.k == 1);
  CHECK(v.per_k[0] == FWStatus::Fail);
  REQUIRE_FALSE(v.witnesses.empty());
  CHECK(v.witnesses[0].k == 0);
  CHECK(v.witnesses[0].n == 0);
  CHECK(v.witnesses[0].l == 0);

  CHECK_THROWS_AS(fw_decide(exact_profile({1, 1}, "short"), exact_profile(ones, "ones"), 1, 5, 5), DomainError);
}

TEST_CASE("k-shift violation between A_0.4 and A_0.6") {
  const BandProfile p = band_profile(a_t(0.4), 200 + 50 + 3);
  const BandProfile q = band_profile(a_t(0.6), 200 + 50 + 3);
  const FWVerdict v = fw_decide(p, q, 3, 200, 50);
  CHECK(v.outcome == FWOutcome::Violation);
  std::vector<bool> seen(4, false);
  for (const auto& w : v.witnesses) {
    seen[w.k] = true;
    const double tp = w.side == FWSide::PinQ ? 0.4 : 0.6, tq = w.side == FWSide::PinQ ? 0.6 : 0.4;
    const auto n = std::int64_t(w.n), l = std::int64_t(w.l), k = std::int64_t(w.k);
    const std::uint64_t inner = band_sum(tp, n, n + l);
    const std::uint64_t outer = band_sum(tq, std::max<std::int64_t>(0, n - k), n + l + k);
    CHECK(inner > outer);
    CHECK(outer == w.rhs);
    CHECK(inner >= w.lhs);
  }
  for (bool s : seen) CHECK(s);
}

TEST_CASE("k-shift properties on random profiles") {
  std::mt19937_64 rng(137);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::uint64_t> x(60), y(60);
    const std::uint64_t spread = 1 + rng() % 4;
    for (std::size_t n = 0; n < 60; ++n) {
      x[n] = rng() % (spread + 1);
      y[n] = rng() % (spread + 1);
    }
    const BandProfile p = exact_profile(x, "p"), q = exact_profile(y, "q");
    const FWVerdict pq = fw_decide(p, q, 4, 30, 20), qp = fw_decide(q, p, 4, 30, 20);
    CHECK(pq.outcome == qp.outcome);
    CHECK(pq.per_k == qp.per_k);
    for (std::size_t k = 1; k < pq.per_k.size(); ++k) {
      if (pq.per_k[k - 1] == FWStatus::Pass) CHECK(pq.per_k[k] == FWStatus::Pass);
    }
    if (pq.outcome == FWOutcome::Equivalent) {
      for (std::size_t k = pq.k; k < pq.per_k.size(); ++k) CHECK(pq.per_k[k] == FWStatus::Pass);
    }
    CHECK(fw_decide(p, p, 2, 30, 20).outcome == FWOutcome::Equivalent);
  }
}

TEST_CASE("domain equality") {
  FamilyParams s, t;
  s.t = 0.0;
  t.t = 1.0;
  const DomainEquality b = domains_equal_codiag(make_family("B_t", s), make_family("B_t", t));
  CHECK(b.equal);
  CHECK(b.ratio_sup / b.ratio_inf <= 4.0);

  const DomainEquality a = domains_equal_codiag(a_t(0.4), a_t(0.6));
  CHECK_FALSE(a.equal);
  CHECK(a.ratio_at_horizon < 1e-6);
  CHECK(a.drift);

  const DomainEquality same = domains_equal_codiag(a_t(0.5), a_t(0.5));
  CHECK(same.equal);
  CHECK(same.ratio_sup == 1.0);
  CHECK(same.ratio_inf == 1.0);

  FamilyParams eta;
  eta.basis = "eta";
  CHECK_THROWS_AS(domains_equal_codiag(a_t(0.5), make_family("A_t", eta)), DomainError);
}

TEST_CASE("equal domains never give a k-shift violation") {
  std::vector<OperatorSpec> ops;
  for (double t : {0.0, 0.5, 1.0}) {
    FamilyParams p;
    p.t = t;
    ops.push_back(make_family("B_t", p));
  }
  ops.push_back(a_t(0.5));
  ops.push_back(oracle::from_generator("2 * n", oracle::divergent_meta(true, false), "2n"));
  ops.push_back(oracle::from_generator("3 * n + 1", oracle::divergent_meta(true, false), "3n+1"));
  for (const auto& x : ops) {
    for (const auto& y : ops) {
      if (!domains_equal_codiag(x, y).equal) continue;
      const BandProfile p = band_profile(x, 40, 1 << 16), q = band_profile(y, 40, 1 << 16);
      const std::string pair = x.label() + " / " + y.label();
      CHECK_MESSAGE(fw_decide(p, q, 3, 20, 16).outcome != FWOutcome::Violation, pair);
    }
  }
}

}  // TEST_SUITE
