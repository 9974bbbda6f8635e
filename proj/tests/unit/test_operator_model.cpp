#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "wvn/error.hpp"
#include "wvn/families.hpp"
#include "wvn/gen_expr.hpp"
#include "wvn/pairing.hpp"
#include "wvn/sequence.hpp"

using namespace wvn;

TEST_SUITE("operator_model") {

TEST_CASE("generator grammar") {
  const GenExpr a = parse_generator("2^(n^0.5)");
  CHECK(a.eval(4) == 4.0);
  CHECK(a.eval(9) == 8.0);
  CHECK(a.eval(1) == 2.0);

  const GenExpr zero = parse_generator("0");
  CHECK(zero.eval(1) == 0.0);
  CHECK(zero.eval(123456) == 0.0);
  CHECK_FALSE(zero.depends_on_index());

  const GenExpr b1 = parse_generator("k(n) + 1/(m(n)+2)");
  CHECK(b1.eval(1) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(b1.eval(6) == doctest::Approx(2.25).epsilon(1e-15));  // <2,2>

  CHECK(parse_generator("-n + 3").eval(5) == -2.0);
  CHECK(parse_generator("2^3^2").eval(1) == 512.0);  // right associative
  CHECK(parse_generator("exp2(n)").eval(10) == 1024.0);
  CHECK(parse_generator("if n <= 3 then 1 else 2").eval(3) == 1.0);
  CHECK(parse_generator("if n<=3 then 1 else 2").eval(4) == 2.0);
  CHECK(parse_generator("if n in {2, 5} then 7 else 0").eval(5) == 7.0);
  CHECK(parse_generator("if even(n) then 1 else -1").eval(7) == -1.0);
}

TEST_CASE("rational enumerations") {
  const double expected[] = {0.0, 1.0, -1.0, 0.5, -0.5, 1.0 / 3, -1.0 / 3, 2.0 / 3, -2.0 / 3, 0.25, -0.25};
  for (std::uint64_t n = 1; n <= 11; ++n) CHECK(zigzag_rational(n) == doctest::Approx(expected[n - 1]));
  const double reversed[] = {0.0, -1.0, 1.0, -0.5, 0.5, -2.0 / 3, 2.0 / 3, -1.0 / 3, 1.0 / 3, -0.75, 0.75};
  for (std::uint64_t n = 1; n <= 11; ++n) CHECK(zigzag_rational_reversed(n) == doctest::Approx(reversed[n - 1]));
  // same multiset on every complete denominator group
  std::vector<double> x, y;
  for (std::uint64_t n = 1; n <= 1 + 2 * (1 + 1 + 2 + 2 + 4 + 2 + 6); ++n) {
    x.push_back(zigzag_rational(n));
    y.push_back(zigzag_rational_reversed(n));
  }
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  CHECK(x == y);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_generator("2^"), ParseError);
  CHECK_THROWS_AS(parse_generator("(n"), ParseError);
  CHECK_THROWS_AS(parse_generator("n +* 2"), ParseError);
  CHECK_THROWS_AS(parse_generator("foo(n)"), SemanticError);
  try {
    parse_generator("n + )");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

namespace {

std::string random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  std::uniform_int_distribution<int> small(1, 9);
  switch (pick(rng)) {
    case 0: return std::to_string(small(rng));
    case 1: return "n";
    case 2: return "k(n)";
    case 3: return "(" + random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1) + ")";
    case 4: return random_expr(rng, depth - 1) + " * " + random_expr(rng, depth - 1);
    case 5: return random_expr(rng, depth - 1) + " / (m(n) + " + std::to_string(small(rng)) + ")";
    case 6: return "-" + random_expr(rng, depth - 1);
    case 7: return "if even(n) then " + random_expr(rng, depth - 1) + " else " + random_expr(rng, depth - 1);
    case 8: return "rat(" + random_expr(rng, depth - 1) + ")";
    default: return "(" + random_expr(rng, depth - 1) + ")^2";
  }
}

}  // namespace

TEST_CASE("print then parse is the identity on the tree") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const std::string text = random_expr(rng, 4);
    const GenExpr e = parse_generator(text);
    const GenExpr back = parse_generator(e.to_string());
    CHECK_MESSAGE(e == back, text);
    CHECK(back.to_string() == e.to_string());
    for (std::uint64_t n : {1u, 2u, 7u, 64u}) {
      const double x = e.eval(n), y = back.eval(n);
      CHECK(((std::isnan(x) && std::isnan(y)) || x == y));
    }
  }
}

TEST_CASE("pairing") {
  CHECK(pair_encode(1, 1) == 1);
  CHECK(pair_encode(2, 2) == 6);
  CHECK(pair_encode(3, 1) == 4);
  CHECK(pair_decode(1) == PairIndex{1, 1});
  CHECK(pair_decode(6) == PairIndex{2, 2});
  CHECK(pair_decode(12) == PairIndex{3, 2});
  CHECK_THROWS_AS(pair_encode(0, 1), DomainError);
  CHECK_THROWS_AS(pair_encode(64, 2), DomainError);
  CHECK_THROWS_AS(pair_decode(0), DomainError);

  bool ok = true;
  for (std::uint64_t n = 1; n <= 1000000; ++n) {
    const PairIndex p = pair_decode(n);
    ok = ok && pair_encode(p.k, p.m) == n && ((n >> (p.k - 1)) & 1u) == 1u;
  }
  CHECK(ok);
}

TEST_CASE("built-in families") {
  FamilyParams p;
  p.t = 1.0;
  CHECK(make_family("B_t", p).eval(1) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  p.predicate = "even(n)";
  CHECK(make_family("A_F", p).eval(3) == 0.0);
  CHECK(make_family("A_F", p).eval(4) == 1.0);
  p.t = 0.5;
  CHECK(make_family("A_t", p).eval(4) == 4.0);

  const OperatorSpec ex = make_family("example41_A");
  CHECK(ex.eval(3) == 3.0);
  CHECK(ex.eval(4) == 0.0);
  CHECK_FALSE(ex.meta().bounded_above);
  CHECK(ex.meta().accumulation.points == std::vector<double>{0.0});

  CHECK(make_family("A_t").meta().accumulation.abs_divergent);

  p.t = 1.5;
  CHECK_THROWS_AS(make_family("A_t", p), DomainError);
  CHECK_THROWS_AS(make_family("B_t", p), DomainError);
  CHECK_THROWS_AS(make_family("no_such_family"), DomainError);
}

TEST_CASE("every built-in passes the sampled consistency check") {
  for (const auto& name : family_names()) {
    const OperatorSpec op = make_family(name);
    const ConsistencyReport r = op.seq.check_consistency();
    CHECK_MESSAGE(r.ok, name);
  }
}

TEST_CASE("metadata that contradicts the samples is reported") {
  // declares accumulation at 5 but the values sit at 0
  const OperatorSpec bad = oracle::from_generator("0", oracle::point_meta({5.0}), "bad");
  CHECK_FALSE(bad.seq.check_consistency().ok);
  // undeclared cluster at 2
  const OperatorSpec hidden = oracle::from_generator("if even(n) then 2 + 1/n else 1/n", oracle::point_meta({0.0}), "hidden");
  CHECK_FALSE(hidden.seq.check_consistency().ok);
}

TEST_CASE("evaluation is pure") {
  for (const auto& name : family_names()) {
    const OperatorSpec op = make_family(name);
    const auto x = op.sample(512);
    const auto y = op.sample(512);
    CHECK(x == y);
  }
  const OperatorSpec a = make_family("A_t");
  CHECK_THROWS_AS(a.eval(0), DomainError);
}

TEST_CASE("finite-rank perturbation keeps the metadata") {
  const OperatorSpec b = make_family("B_t");
  const FiniteRankDiagonal k = {{1, 10.0}, {3, -1.0}};
  const OperatorSpec c = perturbed(b, k);
  CHECK(c.eval(1) == b.eval(1) + 10.0);
  CHECK(c.eval(3) == b.eval(3) - 1.0);
  CHECK(c.eval(2) == b.eval(2));
  CHECK(c.meta() == b.meta());
}

}  // TEST_SUITE
