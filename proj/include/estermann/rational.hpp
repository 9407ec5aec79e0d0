#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace estermann {

using i128 = __int128;
using u128 = unsigned __int128;

// Exact rational with 64-bit terms. The denominator is always positive and
// the fraction is in lowest terms; construction never normalizes silently,
// it rejects.
class Rational {
 public:
  constexpr Rational() = default;
  // Throws Errc::InvalidArgument on zero denominator or a non-reduced pair.
  Rational(std::int64_t num, std::int64_t den);
  static Rational integer(std::int64_t v) { return Rational(v, 1); }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_integer() const noexcept { return den_ == 1; }
  std::int64_t floor() const noexcept;
  std::int64_t ceil() const noexcept;
  long double to_long_double() const noexcept;
  // Distance to the nearest integer, ||x||.
  long double dist_to_integer() const noexcept;

  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Reduces num/den; used where a sum of rationals is formed internally.
Rational make_reduced(i128 num, i128 den);
Rational operator+(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, std::int64_t k);

// "p/q" or "p". Rejects decimals, whitespace inside, and non-reduced pairs.
Rational parse_rational(std::string_view text);

std::int64_t gcd64(std::int64_t a, std::int64_t b) noexcept;

}  // namespace estermann
