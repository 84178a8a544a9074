#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace solvcert {

/// Arbitrary-precision signed integer used for every exact computation.
using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

/// Bits over GF(2), one byte per entry (always 0 or 1).
using BitVector = std::vector<std::uint8_t>;

/// Residue in {0, 1} for any sign of `x`.
inline std::uint8_t mod2(const Integer& x) { return static_cast<std::uint8_t>(bit_test(abs(x), 0) ? 1 : 0); }

inline bool is_even(const Integer& x) { return mod2(x) == 0; }

/// Least nonnegative residue of `x` modulo a positive `m`.
inline Integer floor_mod(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r;
}

inline std::string to_string(const Integer& x) { return x.str(); }

/// Binomial coefficient for the small sizes used by wedge coordinates.
constexpr std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace solvcert
