#include "wvn/families.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "wvn/error.hpp"

namespace wvn {

namespace {

std::string num(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), std::abs(v));
  (void)ec;
  std::string s(buf.data(), end);
  return v < 0 ? "(-" + s + ")" : s;
}

OperatorSpec build(std::string gen_text, TailMeta meta, std::string label, const FamilyParams& p) {
  EigenvalueSequence seq({}, parse_generator(gen_text), std::move(meta), std::move(label));
  return {std::move(seq), p.basis};
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

}  // namespace

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"example41_A", "example41_B", "A_t",         "B_t",
                                                 "A_F",         "rationals",   "constant",    "alternating",
                                                 "K0"};
  return names;
}

OperatorSpec make_family(std::string_view name, const FamilyParams& p) {
  TailMeta meta;
  if (name == "example41_A") {
    meta.bounded_above = false;
    meta.accumulation.points = {0.0};
    return build("if odd(n) then n else 0", meta, "example41_A", p);
  }
  if (name == "example41_B") {
    meta.accumulation.points = {0.0};
    meta.finitely_many_isolated = true;
    return build("0", meta, "example41_B", p);
  }
  if (name == "A_t") {
    require(p.t > 0.0 && p.t < 1.0, "A_t requires 0 < t < 1");
    meta.bounded_above = false;
    meta.accumulation.abs_divergent = true;
    return build("2^(n^" + num(p.t) + ")", meta, "A_" + num(p.t), p);
  }
  if (name == "B_t") {
    require(p.t >= 0.0 && p.t <= 1.0, "B_t requires 0 <= t <= 1");
    meta.bounded_above = false;
    meta.accumulation.progressions = {{1.0, 1.0}};
    meta.finitely_many_isolated = p.t == 0.0;
    return build("k(n) + " + num(p.t) + "/(m(n) + 2)", meta, "B_" + num(p.t), p);
  }
  if (name == "A_F") {
    GenExpr gen = indicator_of(p.predicate);
    meta.accumulation.points = gen.infinite_multiplicity_values();
    meta.finitely_many_isolated = true;
    EigenvalueSequence seq({}, std::move(gen), std::move(meta), "A_F[" + p.predicate + "]");
    return {std::move(seq), p.basis};
  }
  if (name == "rationals") {
    require(p.bound > 0.0 && std::isfinite(p.bound), "rationals requires a positive window bound");
    require(p.variant == 0 || p.variant == 1, "rationals variant must be 0 or 1");
    meta.accumulation.intervals = {{-p.bound, p.bound}};
    meta.finitely_many_isolated = true;
    const std::string gen = num(p.bound) + (p.variant == 0 ? "*rat(n)" : "*rrat(n)");
    return build(gen, meta, "rationals[" + num(p.bound) + "," + std::to_string(p.variant) + "]", p);
  }
  if (name == "constant") {
    require(std::isfinite(p.value), "constant requires a finite value");
    meta.accumulation.points = {p.value};
    meta.finitely_many_isolated = true;
    return build(num(p.value), meta, "constant[" + num(p.value) + "]", p);
  }
  if (name == "alternating") {
    require(std::isfinite(p.offset), "alternating requires a finite offset");
    meta.bounded_above = false;
    meta.bounded_below = false;
    meta.accumulation.abs_divergent = true;
    const std::string body = "(n + " + num(p.offset) + ")";
    return build("if even(n) then " + body + " else -" + body, meta, "alternating[" + num(p.offset) + "]", p);
  }
  if (name == "K0") {
    require(p.s >= 0.0 && p.s <= 1.0 && p.t >= 0.0 && p.t <= 1.0, "K0 requires s, t in [0, 1]");
    const double c = p.t - p.s;
    meta.accumulation.points.push_back(0.0);
    // Each c/(m+2) is hit for every k; beyond m = 1000 they sit within 1e-3 of 0.
    for (int m = 1; m <= 1000 && c != 0.0; ++m) meta.accumulation.points.push_back(c / (m + 2));
    meta.finitely_many_isolated = true;
    return build(num(c) + "/(m(n) + 2)", meta, "K0[" + num(p.s) + "," + num(p.t) + "]", p);
  }
  throw DomainError("unknown family '" + std::string(name) + "'");
}

}  // namespace wvn
