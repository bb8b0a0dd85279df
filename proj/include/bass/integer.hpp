#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "bass/error.hpp"

namespace bass {

/// Arbitrary-precision integer. Group elements of every carrier are stored
/// as an Integer: a table index for finite groups, the value itself for Z.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Element = Integer;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// lcm(d, 0) = 0, matching the stride convention dZ ∩ {0} = {0}.
inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

/// Floor modulus with result in [0, |d|).
inline Integer floor_mod(const Integer& x, const Integer& d) {
  Integer m = x % d;
  if (m < 0) m += abs(d);
  return m;
}

inline std::size_t to_index(const Element& x) {
  if (x < 0 || x > std::numeric_limits<std::uint32_t>::max())
    fail(ErrorCode::IndexOutOfRange, "element index " + x.str() + " out of range");
  return static_cast<std::size_t>(x.convert_to<std::uint64_t>());
}

inline std::size_t hash_integer(const Integer& x) {
  return boost::multiprecision::hash_value(x);
}

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace bass
