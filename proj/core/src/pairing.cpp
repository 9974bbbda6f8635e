#include "wvn/pairing.hpp"

#include <bit>
#include <string>

#include "wvn/error.hpp"

namespace wvn {

std::uint64_t pair_encode(std::uint64_t k, std::uint64_t m) {
  if (k < 1 || m < 1) throw DomainError("pair_encode: k and m must be >= 1");
  if (m > (std::uint64_t{1} << 62)) throw DomainError("pair_encode: m out of range");
  const std::uint64_t odd = 2 * m - 1;
  // odd occupies bit_width(odd) bits; shifting by k-1 must stay within 64.
  if (k - 1 + static_cast<std::uint64_t>(std::bit_width(odd)) > 64) {
    throw DomainError("pair_encode: <" + std::to_string(k) + "," + std::to_string(m) +
                      "> overflows 64 bits");
  }
  return odd << (k - 1);
}

PairIndex pair_decode(std::uint64_t n) {
  if (n == 0) throw DomainError("pair_decode: n must be >= 1");
  const auto shift = static_cast<std::uint64_t>(std::countr_zero(n));
  const std::uint64_t odd = n >> shift;
  return {shift + 1, (odd + 1) / 2};
}

}  // namespace wvn
