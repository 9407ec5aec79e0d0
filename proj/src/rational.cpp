#include "estermann/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "estermann/error.hpp"

namespace estermann {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Parse: return "Parse";
    case Errc::MuSumNotOne: return "MuSumNotOne";
    case Errc::IntegerExponent: return "IntegerExponent";
    case Errc::ExponentTooSmall: return "ExponentTooSmall";
    case Errc::WindowTooWide: return "WindowTooWide";
    case Errc::EmptyRange: return "EmptyRange";
    case Errc::MemoryBudgetExceeded: return "MemoryBudgetExceeded";
    case Errc::OracleLimitExceeded: return "OracleLimitExceeded";
    case Errc::ToleranceNotMet: return "ToleranceNotMet";
    case Errc::Overflow: return "Overflow";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) noexcept {
  return std::gcd(a, b);
}

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den <= 0)
    throw Error(Errc::InvalidArgument, "rational denominator must be positive");
  if (std::gcd(num, den) != 1 && !(num == 0 && den == 1))
    throw Error(Errc::InvalidArgument,
                std::to_string(num) + "/" + std::to_string(den) + " is not in lowest terms");
}

std::int64_t Rational::floor() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

long double Rational::to_long_double() const noexcept {
  // Split off the integer part so large numerators keep full precision.
  const std::int64_t ip = floor();
  const std::int64_t rem = num_ - ip * den_;
  return static_cast<long double>(ip) +
         static_cast<long double>(rem) / static_cast<long double>(den_);
}

long double Rational::dist_to_integer() const noexcept {
  const std::int64_t rem = num_ - floor() * den_;  // in [0, den)
  const std::int64_t d = std::min(rem, den_ - rem);
  return static_cast<long double>(d) / static_cast<long double>(den_);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  const i128 lhs = static_cast<i128>(a.num_) * b.den_;
  const i128 rhs = static_cast<i128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

namespace {

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational make_reduced(i128 num, i128 den) {
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
  if (num > kMax || num < -kMax || den > kMax)
    throw Error(Errc::Overflow, "rational term exceeds 64 bits");
  if (num == 0) den = 1;
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<i128>(a.num()) * b.den() + static_cast<i128>(b.num()) * a.den(),
                      static_cast<i128>(a.den()) * b.den());
}

Rational operator*(const Rational& a, std::int64_t k) {
  return make_reduced(static_cast<i128>(a.num()) * k, a.den());
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (s.empty()) throw Error(Errc::Parse, "malformed rational '" + std::string(whole) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc::result_out_of_range)
    throw Error(Errc::Overflow, "rational term out of range in '" + std::string(whole) + "'");
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(Errc::Parse, "malformed rational '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text), 1);
  const std::int64_t num = parse_int(text.substr(0, slash), text);
  const std::int64_t den = parse_int(text.substr(slash + 1), text);
  if (den <= 0) throw Error(Errc::Parse, "denominator must be positive in '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace estermann
