#pragma once

#include <cstdint>
#include <boost/multiprecision/cpp_int.hpp>

namespace cgh {

/// Arbitrary-precision integer used for all exact arithmetic.
using Int = boost::multiprecision::cpp_int;

/// Exact rational scalar used by the arrangement geometry.
using Rational = boost::multiprecision::cpp_rational;

/// Signed size/count type used across the public interfaces.
using Index = std::int64_t;

/// Default word-size prime for modular rank computations (2^31 - 1).
inline constexpr std::int64_t default_prime = 2147483647;

}  // namespace cgh
