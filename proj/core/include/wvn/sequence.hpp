#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wvn/closed_set.hpp"
#include "wvn/gen_expr.hpp"

namespace wvn {

inline constexpr std::uint64_t kDefaultHorizon = 4096;
inline constexpr double kDefaultWindowBound = 64.0;
inline constexpr double kDefaultResolution = 1e-6;

// start, start + step, start + 2 step, ... (infinite, step != 0).
struct Progression {
  double start = 1.0;
  double step = 1.0;
  friend bool operator==(const Progression&, const Progression&) = default;
};

// Declared cluster set of a sequence (values hit infinitely often count).
struct AccumulationSet {
  std::vector<double> points;
  std::vector<Interval> intervals;
  std::vector<Progression> progressions;
  bool abs_divergent = false;  // |a_n| -> infinity; the set itself is empty

  bool empty() const { return points.empty() && intervals.empty() && progressions.empty(); }
  ClosedSetApprox materialize(Window window) const;
  friend bool operator==(const AccumulationSet&, const AccumulationSet&) = default;
};

struct TailMeta {
  bool bounded_above = true;
  bool bounded_below = true;
  AccumulationSet accumulation;
  bool finitely_many_isolated = false;  // all but finitely many terms lie in the accumulation set

  bool bounded() const { return bounded_above && bounded_below; }
  friend bool operator==(const TailMeta&, const TailMeta&) = default;
};

struct ConsistencyParams {
  std::uint64_t horizon = kDefaultHorizon;
  double resolution = kDefaultResolution;  // clustering gap
  double delta = 1e-2;                     // neighbourhood radius around declared points
  std::size_t cluster_min = 50;            // clusters this large must be declared
  std::uint64_t max_horizon = std::uint64_t{1} << 20;  // extension cap for slow convergence
  Window window = Window::symmetric(kDefaultWindowBound);
};

struct ConsistencyReport {
  bool ok = true;
  std::vector<std::string> problems;
  std::vector<double> unverified_points;  // converging, but not within delta by max_horizon
  std::uint64_t horizon_used = 0;
};

// {a_n}: explicit values for n <= prefix.size(), generator beyond.
class EigenvalueSequence {
 public:
  EigenvalueSequence() = default;
  EigenvalueSequence(std::vector<double> prefix, GenExpr generator, TailMeta meta, std::string label);

  // Throws DomainError for n == 0 or a non-finite value.
  double eval(std::uint64_t n) const;
  std::vector<double> sample(std::uint64_t horizon) const;

  const std::vector<double>& prefix() const { return prefix_; }
  const GenExpr& generator() const { return generator_; }
  const TailMeta& meta() const { return meta_; }
  const std::string& label() const { return label_; }

  // Values of infinite multiplicity implied by the generator's structure.
  std::vector<double> repeated_values() const { return generator_.infinite_multiplicity_values(); }

  ConsistencyReport check_consistency(const ConsistencyParams& params = {}) const;

 private:
  std::vector<double> prefix_;
  GenExpr generator_;
  TailMeta meta_;
  std::string label_;
};

struct Shift {
  std::uint64_t index = 1;
  double shift = 0.0;
  friend bool operator==(const Shift&, const Shift&) = default;
};

// A finite-rank self-adjoint diagonal operator: sum of shift * e_index.
using FiniteRankDiagonal = std::vector<Shift>;

// Diagonal self-adjoint operator in the orthonormal basis named `basis`.
struct OperatorSpec {
  EigenvalueSequence seq;
  std::string basis = "xi";

  double eval(std::uint64_t n) const { return seq.eval(n); }
  std::vector<double> sample(std::uint64_t horizon) const { return seq.sample(horizon); }
  const TailMeta& meta() const { return seq.meta(); }
  const std::string& label() const { return seq.label(); }
};

// A + K for a finite-rank diagonal K; the tail metadata is unchanged.
OperatorSpec perturbed(const OperatorSpec& op, std::span<const Shift> perturbation);

// Throws DomainError unless both operators share the basis label.
void require_same_basis(const OperatorSpec& a, const OperatorSpec& b, const char* operation);

}  // namespace wvn
