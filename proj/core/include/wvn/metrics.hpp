#pragma once

#include <cstdint>

#include "wvn/sequence.hpp"

namespace wvn {

enum class TailBoundMode {
  Ignore,          // full truncation bound: every omitted term counted as 2
  MetadataBound,   // indices past both prefixes with equal generators contribute 0
};

struct MetricParams {
  std::uint64_t n_max = 20;
  std::uint64_t m_max = 20;
  TailBoundMode tail_bound_mode = TailBoundMode::Ignore;
};

struct SrtDistance {
  double value = 0.0;
  double truncation_bound = 0.0;  // |d - value| <= truncation_bound
};

enum class TailStatus { Certified, Unverified };

struct NrtDistance {
  double value = 0.0;             // sup over n <= horizon
  std::uint64_t argmax = 0;       // first index attaining it (0 when value == 0)
  TailStatus tail = TailStatus::Unverified;
  double tail_bound = 0.0;        // meaningful when tail == Certified
  bool head_dominates = false;    // value >= tail_bound
};

// sup_{|t| <= m} |e^{it delta} - 1|.
double srt_sup(double delta, std::uint64_t m);

// |1/(a - i) - 1/(b - i)|, computed without cancellation.
double resolvent_gap(double a, double b);

SrtDistance srt_distance(const OperatorSpec& a, const OperatorSpec& b, const MetricParams& params = {});

NrtDistance nrt_distance(const OperatorSpec& a, const OperatorSpec& b, std::uint64_t horizon = kDefaultHorizon);

// |1/((1-s)a + sb - i) - 1/(a - i)|. Throws DomainError unless 0 <= s <= 1.
double resolvent_interp(double a, double b, double s);

struct InterpPeak {
  double s = 0.0;
  double value = 0.0;
};

// Maximum of resolvent_interp(a, b, .) over [0, 1]: a uniform grid, then
// `levels` rounds of refinement around the best grid point.
InterpPeak resolvent_interp_peak(double a, double b, std::size_t grid = 10000, int levels = 4);

}  // namespace wvn
