#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wvn/error.hpp"
#include "wvn/families.hpp"
#include "wvn/turbulence.hpp"

using namespace wvn;

namespace {

OperatorSpec alternating(double offset) {
  FamilyParams p;
  p.offset = offset;
  return make_family("alternating", p);
}

// Explicit signs for the first `n` indices, alternating tail.
OperatorSpec signed_prefix(const std::vector<double>& values) {
  return {EigenvalueSequence(values, parse_generator("(-1)^n * n"), oracle::divergent_meta(true, true), "signed"),
          "xi"};
}

}  // namespace

TEST_SUITE("turbulence") {

TEST_CASE("sign partition") {
  const SignPartition alt = sign_partition(alternating(0), 10);
  CHECK(alt.nonnegative == std::vector<std::uint64_t>{2, 4, 6, 8, 10});
  CHECK(alt.negative == std::vector<std::uint64_t>{1, 3, 5, 7, 9});
  CHECK(alt.both_infinite);

  FamilyParams half;
  half.t = 0.5;
  const SignPartition a = sign_partition(make_family("A_t", half), 64);
  CHECK(a.nonnegative.size() == 64);
  CHECK(a.negative.empty());
  CHECK_FALSE(a.both_infinite);

  // n (-1)^floor(n/2): compare with a direct filter
  std::vector<double> v;
  for (int n = 1; n <= 64; ++n) v.push_back(((n / 2) % 2 ? -1.0 : 1.0) * n);
  const SignPartition s = sign_partition(signed_prefix(v), 64);
  std::vector<std::uint64_t> pos, neg;
  for (int n = 1; n <= 64; ++n) (v[n - 1] >= 0 ? pos : neg).push_back(n);
  CHECK(s.nonnegative == pos);
  CHECK(s.negative == neg);
}

TEST_CASE("sign-matched permutation") {
  const OperatorSpec a = alternating(0);
  const PermutationPlan same = sign_matched_permutation(a, a, 100);
  for (std::size_t n = 0; n < same.size(); ++n) CHECK(same.pi[n] == n);
  CHECK(same.tail_rule == TailRule::SignBlock);

  const OperatorSpec neg = oracle::from_generator("-((-1)^n * n)", oracle::divergent_meta(true, true), "neg");
  const PermutationPlan shift = sign_matched_permutation(a, neg, 100);
  REQUIRE(shift.size() == 100);
  for (std::size_t n = 0; n < 100; ++n) {
    // 1-based: pi(2k) = 2k - 1 and pi(2k - 1) = 2k
    const std::size_t expected = n % 2 ? n - 1 : n + 1;
    CHECK(shift.pi[n] == expected);
    CHECK(a.eval(n + 1) * neg.eval(shift.pi[n] + 1) >= 0.0);
  }

  std::mt19937_64 rng(151);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(80), y(80);
    for (int n = 0; n < 80; ++n) {
      x[n] = (rng() % 2 ? 1.0 : -1.0) * double(1 + rng() % 9);
      y[n] = (rng() % 2 ? 1.0 : -1.0) * double(1 + rng() % 9);
    }
    x[0] = 1;
    x[1] = -1;
    y[0] = 1;
    y[1] = -1;
    const OperatorSpec ox = signed_prefix(x), oy = signed_prefix(y);
    const PermutationPlan p = sign_matched_permutation(ox, oy, 80);
    CHECK(p.is_bijection());
    for (std::size_t n = 0; n < p.size(); ++n) CHECK(ox.eval(n + 1) * oy.eval(p.pi[n] + 1) >= 0.0);
    if (p.truncated) {
      CHECK(p.size() < 80);
    } else {
      CHECK(p.size() == 80);
    }
  }

  FamilyParams half;
  half.t = 0.5;
  CHECK_THROWS_AS(sign_matched_permutation(make_family("A_t", half), a, 32), DomainError);
}

TEST_CASE("walk between unbounded operators") {
  const OperatorSpec a = alternating(0), b = alternating(1);
  const OrbitWalk w = orbit_walk_unbounded(a, b, 0.5, 0.1, 512);
  CHECK(w.steps.size() == 11);
  CHECK(w.m_p == 1.0);
  for (const auto& step : w.steps) {
    for (const auto& e : step) CHECK(std::abs(e.shift) < 0.1);
  }
  for (double d : w.distances) {
    CHECK(d < 0.5);
    CHECK(d <= w.target_distance + 1e-12);
  }
  CHECK(w.tail == TailStatus::Certified);
  const WalkCheck c = verify_walk(w, &a);
  CHECK(c.ok);
  CHECK(c.max_discrepancy <= 1e-12);

  const OrbitWalk one = orbit_walk_unbounded(a, b, 0.5, 10.0, 512);
  CHECK(one.steps.size() == 1);
  CHECK(verify_walk(one, &a).ok);

  const OrbitWalk none = orbit_walk_unbounded(a, a, 0.5, 0.1, 512);
  CHECK(none.steps.empty());

  CHECK_THROWS_AS(orbit_walk_unbounded(a, b, 0.0, 0.1, 512), DomainError);
  CHECK_THROWS_AS(orbit_walk_unbounded(a, b, 0.5, -1.0, 512), DomainError);
  CHECK_THROWS_AS(orbit_walk_unbounded(a, b, 1e-9, 0.1, 512), DomainError);
}

TEST_CASE("the checker catches tampering") {
  const OperatorSpec a = alternating(0), b = alternating(1);
  OrbitWalk w = orbit_walk_unbounded(a, b, 0.5, 0.1, 512);
  OrbitWalk moved = w;
  moved.distances[3] += 1e-6;
  CHECK_FALSE(verify_walk(moved, &a).ok);
  OrbitWalk big = w;
  big.steps[0][0].shift = 0.2;
  CHECK_FALSE(verify_walk(big, &a).ok);
  OrbitWalk tight = w;
  tight.delta = 1e-3;
  CHECK_FALSE(verify_walk(tight, &a).ok);
}

TEST_CASE("walk from zero") {
  const OrbitWalk empty = orbit_walk_compact_at_zero({}, 4, 1.0, 0.5);
  CHECK(empty.steps.empty());

  const FiniteRankDiagonal b = {{1, 2.0}};
  const OrbitWalk w = orbit_walk_compact_at_zero(b, 4, 1.0, 0.5);
  REQUIRE(w.steps.size() == 5);
  const std::complex<double> i(0.0, 1.0);
  for (std::size_t l = 1; l <= 5; ++l) {
    const double expected = std::abs(1.0 / (2.0 * double(l) / 5.0 - i) - 1.0 / (0.0 - i));
    CHECK(w.probe_distances[0][l - 1] == doctest::Approx(expected).epsilon(1e-14));
  }
  CHECK(w.probe_distances[0].back() == doctest::Approx(std::sqrt(0.8)).epsilon(1e-14));
  CHECK(verify_walk(w, nullptr).ok);

  std::mt19937_64 rng(157);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint64_t> idx = {1, 2, 3, 4, 5, 6};
    std::shuffle(idx.begin(), idx.end(), rng);
    FiniteRankDiagonal r3 = {{idx[0], u(rng)}, {idx[1], u(rng)}, {idx[2], u(rng)}};
    r3[trial % 3].shift = trial % 2 ? 1.0 : -1.0;
    const OrbitWalk rw = orbit_walk_compact_at_zero(r3, 6, 1.0, 0.2);
    CHECK(rw.steps.size() == 6);
    for (const auto& probe : rw.probe_distances) {
      for (std::size_t l = 1; l < probe.size(); ++l) CHECK(probe[l] >= probe[l - 1]);
    }
    CHECK(verify_walk(rw, nullptr).ok);
  }

  CHECK_THROWS_AS(orbit_walk_compact_at_zero(FiniteRankDiagonal{{9, 1.0}}, 4, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(orbit_walk_compact_at_zero(b, 4, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(orbit_walk_compact_at_zero(b, 4, 1.0, 0.0), DomainError);
}

}  // TEST_SUITE
