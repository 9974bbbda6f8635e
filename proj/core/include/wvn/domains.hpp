#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wvn/gen_expr.hpp"
#include "wvn/sequence.hpp"

namespace wvn {

enum class BandKind {
  Exact,     // complete count
  AtLeast,   // count at the horizon; more indices may follow
  Infinite,  // infinitely many ("cap"); count is the horizon count
};

struct BandDim {
  std::uint64_t count = 0;
  BandKind kind = BandKind::Exact;
  friend bool operator==(const BandDim&, const BandDim&) = default;
};

// Which eigenvalues land in band n.
enum class BandConvention {
  Shifted,  // |a| + 1 in [2^n, 2^{n+1})
  Inverse,  // max(|a|, 1) in [2^n, 2^{n+1}); band 0 also takes |a| < 1
};

struct BandProfile {
  std::vector<BandDim> dims;     // d_0 .. d_{n_max}
  std::optional<GenExpr> growth; // d_n = growth(n), used where dims run out or are not exact
  std::string label;
  std::uint64_t horizon = 0;     // indices enumerated
};

inline constexpr std::uint64_t kBandHorizon = std::uint64_t{1} << 22;

// Counts indices j <= horizon per band. For abs-divergent tails the scan
// stops early once |a_j| has stayed above band n_max + 1 for 64 steps
// without decreasing; bands <= n_max are then exact. Bands holding declared
// accumulation values or repeated values are Infinite. Other bands are exact
// when the metadata says finitely many terms are isolated, AtLeast otherwise.
BandProfile band_profile(const OperatorSpec& a, std::size_t n_max, std::uint64_t horizon = kBandHorizon,
                         BandConvention convention = BandConvention::Shifted);

std::size_t band_index(double value, BandConvention convention);

enum class FWOutcome { Equivalent, Violation, Inconclusive };
enum class FWSide { PinQ, QinP };  // which inequality failed

std::string_view to_string(FWOutcome o);
std::string_view to_string(FWSide s);

struct FWWitness {
  std::uint64_t k = 0, n = 0, l = 0;
  FWSide side = FWSide::PinQ;
  std::uint64_t lhs = 0;  // lower bound of sum d(n..n+l)
  std::uint64_t rhs = 0;  // exact sum d(n-k..n+l+k)
  friend bool operator==(const FWWitness&, const FWWitness&) = default;
};

enum class FWStatus { Pass, Fail, Uncertain };

struct FWVerdict {
  FWOutcome outcome = FWOutcome::Inconclusive;
  std::uint64_t k = 0;                 // least passing k when Equivalent
  std::vector<FWWitness> witnesses;    // first failure for each failing k
  std::vector<FWStatus> per_k;         // status of k = 0..k_max
  std::uint64_t k_max = 0, n_max = 0, l_max = 0;
};

// Both k-shift inequalities for n <= n_max, l <= l_max and every k <= k_max.
// Throws DomainError when a profile without growth is shorter than
// n_max + l_max + k_max + 1, or growth disagrees with an exact entry.
FWVerdict fw_decide(const BandProfile& p, const BandProfile& q, std::uint64_t k_max = 5, std::uint64_t n_max = 256,
                    std::uint64_t l_max = 64);

struct DomainEquality {
  bool equal = false;
  double ratio_sup = 0.0;         // of r_n = (1 + a_n^2)/(1 + b_n^2), may be inf
  double ratio_inf = 0.0;         // may be 0
  double ratio_at_horizon = 0.0;
  double log_spread = 0.0;        // log(sup/inf)
  bool drift = false;             // |log r| keeps growing over the last dyadic blocks
  bool bounds_agree = false;
};

inline constexpr double kDomainRatioLimit = 1e6;

DomainEquality domains_equal_codiag(const OperatorSpec& a, const OperatorSpec& b,
                                    std::uint64_t horizon = kDefaultHorizon);

}  // namespace wvn
