#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wvn/sequence.hpp"

namespace wvn {

// Parameters for the built-in families; each family reads only its own.
struct FamilyParams {
  double t = 0.5;                       // A_t, B_t, K0
  double s = 0.0;                       // K0
  std::string predicate = "even(n)";    // A_F: index set F as a generator predicate
  double bound = 1.0;                   // rationals: window [-M, M]
  int variant = 0;                      // rationals: 0 = zig-zag, 1 = reversed zig-zag
  double value = 0.0;                   // constant
  double offset = 0.0;                  // alternating: (-1)^n (n + offset)
  std::string basis = "xi";
};

// Built-in operators:
//   example41_A   odd n carry n, even n carry 0 (A_0 + 0 interleaved)
//   example41_B   the zero operator
//   A_t           2^(n^t), 0 < t < 1
//   B_t           k + t/(m + 2) at n = <k, m>, 0 <= t <= 1
//   A_F           indicator of F
//   rationals     M * (an enumeration of Q in [-1, 1]; variant picks the order)
//   constant      a_n = value
//   alternating   (-1)^n (n + offset)
//   K0            (t - s)/(m + 2) at n = <k, m>, the B_s -> B_t perturbation
// Throws DomainError for unknown names or out-of-range parameters.
OperatorSpec make_family(std::string_view name, const FamilyParams& params = {});

const std::vector<std::string>& family_names();

}  // namespace wvn
