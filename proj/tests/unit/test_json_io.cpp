#include "doctest.h"
#include "wvn/error.hpp"
#include "wvn/families.hpp"
#include "wvn/json_io.hpp"

using namespace wvn;

TEST_SUITE("json_io") {

TEST_CASE("operator specs round trip") {
  for (const auto& name : family_names()) {
    const OperatorSpec op = make_family(name);
    const OperatorSpec back = operator_from_json(to_json(op));
    CHECK(back.label() == op.label());
    CHECK(back.basis == op.basis);
    CHECK(back.meta() == op.meta());
    CHECK(back.sample(300) == op.sample(300));
    CHECK(to_json(back) == to_json(op));
  }
}

TEST_CASE("operator spec parsing") {
  const Json j = Json::parse(R"({
    "label": "half-ints", "basis": "eta", "prefix": [5, 6],
    "generator": "if even(n) then 0.5 else -0.5",
    "meta": {"accumulation": {"points": [-0.5, 0.5]}, "finitely_many_isolated": true}
  })");
  const OperatorSpec op = operator_from_json(j);
  CHECK(op.eval(1) == 5.0);
  CHECK(op.eval(4) == 0.5);
  CHECK(op.basis == "eta");
  CHECK(op.meta().bounded());

  CHECK_THROWS_AS(operator_from_json(Json::parse(R"({"label": "x", "colour": 1})")), ParseError);
  CHECK_THROWS_AS(operator_from_json(Json::parse(R"({"meta": {"bounded": true}})")), ParseError);
  CHECK_THROWS_AS(operator_from_json(Json::parse(R"({"generator": "n +"})")), ParseError);
  CHECK_THROWS_AS(operator_from_json(Json::parse(R"({"prefix": ["a"]})")), ParseError);
  CHECK_THROWS_AS(operator_from_json(Json::parse("[1, 2]")), ParseError);
}

TEST_CASE("closed sets and band profiles round trip") {
  const ClosedSetApprox s(Window{-2, 2}, {-1.5, 1.75}, {{0, 1}}, true, false);
  CHECK(closed_set_from_json(to_json(s)) == s);
  CHECK_THROWS_AS(closed_set_from_json(Json::parse(R"({"window": [1, 0]})")), ParseError);

  BandProfile p;
  p.dims = {{3, BandKind::Infinite}, {2, BandKind::Exact}, {7, BandKind::AtLeast}};
  p.label = "p";
  p.horizon = 99;
  const BandProfile q = band_profile_from_json(to_json(p));
  CHECK(q.dims[0].kind == BandKind::Infinite);
  CHECK(q.dims[1] == p.dims[1]);
  CHECK(q.label == "p");
  CHECK_THROWS_AS(band_profile_from_json(Json::parse(R"({"dims": [1, "lots"]})")), ParseError);
}

TEST_CASE("matrices") {
  const Eigen::MatrixXcd m = matrix_from_json(Json::parse(R"({"re": [[1, 2], [2, 1]], "im": [[0, 1], [-1, 0]]})"));
  CHECK(m(0, 1) == std::complex<double>(2, 1));
  CHECK(matrix_from_json(Json::parse(R"({"re": [[1]]})"))(0, 0) == std::complex<double>(1, 0));
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"re": [[1, 2], [3]]})")), ParseError);
}

TEST_CASE("plans are reported 1-based") {
  PermutationPlan p;
  p.pi = {1, 0, 2};
  const Json j = to_json(p);
  CHECK(j.at("pi") == Json::parse("[2, 1, 3]"));
}

}  // TEST_SUITE
