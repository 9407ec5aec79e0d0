#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "estermann/rational.hpp"

namespace estermann {

// A non-integer exponent c = p/q > 1 with gcd(p, q) = 1 and q >= 2.
class RationalExponent {
 public:
  // Throws IntegerExponent when q == 1 and ExponentTooSmall when p/q <= 1.
  explicit RationalExponent(const Rational& c);
  RationalExponent(std::int64_t p, std::int64_t q)
      : RationalExponent(Rational(p, q)) {}

  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }
  Rational value() const { return Rational(p_, q_); }
  long double as_long_double() const noexcept {
    return static_cast<long double>(p_) / static_cast<long double>(q_);
  }
  std::int64_t integer_part() const noexcept { return p_ / q_; }
  long double fractional_distance() const noexcept { return value().dist_to_integer(); }
  std::string str() const { return value().str(); }

  friend bool operator==(const RationalExponent&, const RationalExponent&) = default;

 private:
  std::int64_t p_;
  std::int64_t q_;
};

// Inclusive integer interval; lo > hi means empty.
struct IntInterval {
  std::int64_t lo = 1;
  std::int64_t hi = 0;

  bool empty() const noexcept { return lo > hi; }
  std::int64_t size() const noexcept { return empty() ? 0 : hi - lo + 1; }
  bool contains(std::int64_t v) const noexcept { return lo <= v && v <= hi; }
  friend bool operator==(const IntInterval&, const IntInterval&) = default;
};

// floor(n^(p/q)), i.e. the unique k with k^q <= n^p < (k+1)^q. Exact for all
// n >= 1; throws Overflow if the result does not fit in 64 bits.
std::uint64_t floor_pow(std::uint64_t n, const RationalExponent& c);

// Same value, but saturates to UINT64_MAX instead of throwing.
std::uint64_t floor_pow_saturating(std::uint64_t n, const RationalExponent& c);

// Minimal and maximal n >= 1 with L <= floor_pow(n, c) <= R, or nullopt if
// no n qualifies.
std::optional<IntInterval> invert_floor_range(std::int64_t L, std::int64_t R,
                                              const RationalExponent& c);

// Integer q-th root of an arbitrary-size non-negative integer given in
// decimal; exposed for tests of the big-integer path.
std::string integer_root_decimal(const std::string& value, std::uint64_t q);

}  // namespace estermann
