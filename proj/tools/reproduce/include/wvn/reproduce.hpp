#pragma once

#include <string>
#include <vector>

#include "wvn/json_io.hpp"

namespace wvn::reproduce {

struct Options {
  double walk_delta = 0.5;  // radius of U for the unbounded walk criterion
  unsigned jobs = 1;        // criteria run concurrently; report order is fixed
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  Json measured;   // deterministic
  Json expected;
  double seconds = 0.0;  // wall time, reported apart from the deterministic part
};

inline constexpr int kCriterionCount = 12;

std::string criterion_name(int id);

// Runs the selected criteria (all when `ids` is empty). Throws DomainError
// for ids outside 1..12.
std::vector<CriterionResult> run(const Options& options, const std::vector<int>& ids = {});

// {"criteria": [...], "passed": n, "failed": n}; no timings.
Json report(const std::vector<CriterionResult>& results);

// {"seconds": {"1": t, ...}}
Json timings(const std::vector<CriterionResult>& results);

// One "[PASS] 3 b_t_obstruction ..." line per criterion.
std::string summary_lines(const std::vector<CriterionResult>& results);

}  // namespace wvn::reproduce
