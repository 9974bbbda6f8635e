#pragma once

#include <cstdint>
#include <utility>

namespace wvn {

struct PairIndex {
  std::uint64_t k = 1;
  std::uint64_t m = 1;
  friend bool operator==(const PairIndex&, const PairIndex&) = default;
};

// <k, m> = 2^(k-1) (2m - 1), a bijection from N x N onto N.
// Throws DomainError for k, m < 1 or when the result exceeds 64 bits.
std::uint64_t pair_encode(std::uint64_t k, std::uint64_t m);

// Inverse of pair_encode: k - 1 is the 2-adic valuation of n.
// Throws DomainError for n = 0.
PairIndex pair_decode(std::uint64_t n);

}  // namespace wvn
