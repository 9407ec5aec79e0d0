#include "estermann/arith.hpp"

#include <gmp.h>

#include <cmath>
#include <limits>
#include <memory>

#include "estermann/error.hpp"

namespace estermann {

RationalExponent::RationalExponent(const Rational& c) : p_(c.num()), q_(c.den()) {
  if (q_ == 1)
    throw Error(Errc::IntegerExponent, "exponent " + c.str() + " is an integer");
  if (p_ <= q_)
    throw Error(Errc::ExponentTooSmall, "exponent " + c.str() + " must exceed 1");
}

namespace {

constexpr u128 kU128Max = ~u128{0};
constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

// base^exp, saturating at kU128Max.
u128 pow_sat(u128 base, std::uint64_t exp) {
  u128 result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > kU128Max / base) return kU128Max;
    result *= base;
  }
  return result;
}

// RAII wrapper; only the handful of mpz calls the slow path needs.
class Mpz {
 public:
  Mpz() { mpz_init(v_); }
  ~Mpz() { mpz_clear(v_); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
  mpz_ptr get() { return v_; }
  mpz_srcptr get() const { return v_; }

 private:
  mpz_t v_;
};

// Floor of the q-th root of x by Newton iteration from above, followed by the
// post-check r^q <= x < (r+1)^q.
void integer_root(Mpz& root, const Mpz& x, std::uint64_t q) {
  if (mpz_sgn(x.get()) == 0) {
    mpz_set_ui(root.get(), 0);
    return;
  }
  const std::size_t bits = mpz_sizeinbase(x.get(), 2);
  Mpz r, next, t;
  // 2^ceil(bits/q) > x^(1/q)
  mpz_set_ui(r.get(), 1);
  mpz_mul_2exp(r.get(), r.get(), (bits + q - 1) / q);
  for (;;) {
    // next = ((q-1) r + x / r^(q-1)) / q
    mpz_pow_ui(t.get(), r.get(), q - 1);
    mpz_tdiv_q(t.get(), x.get(), t.get());
    mpz_mul_ui(next.get(), r.get(), q - 1);
    mpz_add(next.get(), next.get(), t.get());
    mpz_tdiv_q_ui(next.get(), next.get(), q);
    if (mpz_cmp(next.get(), r.get()) >= 0) break;
    mpz_swap(r.get(), next.get());
  }
  mpz_pow_ui(t.get(), r.get(), q);
  while (mpz_cmp(t.get(), x.get()) > 0) {
    mpz_sub_ui(r.get(), r.get(), 1);
    mpz_pow_ui(t.get(), r.get(), q);
  }
  for (;;) {
    mpz_add_ui(next.get(), r.get(), 1);
    mpz_pow_ui(t.get(), next.get(), q);
    if (mpz_cmp(t.get(), x.get()) > 0) break;
    mpz_swap(r.get(), next.get());
  }
  mpz_set(root.get(), r.get());
}

std::uint64_t floor_pow_big(std::uint64_t n, const RationalExponent& c) {
  Mpz x, root;
  mpz_set_ui(x.get(), n);
  mpz_pow_ui(x.get(), x.get(), static_cast<unsigned long>(c.p()));
  integer_root(root, x, static_cast<std::uint64_t>(c.q()));
  if (mpz_sizeinbase(root.get(), 2) > 64) return kU64Max;
  return mpz_get_ui(root.get());
}

}  // namespace

std::uint64_t floor_pow_saturating(std::uint64_t n, const RationalExponent& c) {
  if (n <= 1) return n;
  const auto p = static_cast<std::uint64_t>(c.p());
  const auto q = static_cast<std::uint64_t>(c.q());
  // Fast path: n^p fits in 126 bits, so (k+1)^q for the root k is still
  // representable (saturation only ever signals "too big").
  const double log2_np = static_cast<double>(p) * std::log2(static_cast<double>(n));
  if (log2_np > 125.0) return floor_pow_big(n, c);
  const u128 x = pow_sat(n, p);
  if (x == kU128Max) return floor_pow_big(n, c);

  const long double seed = std::floor(std::pow(static_cast<long double>(x), 1.0L / q));
  u128 k = seed <= 0 ? 0 : static_cast<u128>(seed);
  while (k > 0 && pow_sat(k, q) > x) --k;
  while (pow_sat(k + 1, q) <= x) ++k;
  if (k > kU64Max) return kU64Max;
  return static_cast<std::uint64_t>(k);
}

std::uint64_t floor_pow(std::uint64_t n, const RationalExponent& c) {
  if (n == 0) throw Error(Errc::InvalidArgument, "floor_pow requires n >= 1");
  const std::uint64_t k = floor_pow_saturating(n, c);
  if (k == kU64Max)
    throw Error(Errc::Overflow, "floor(" + std::to_string(n) + "^" + c.str() + ") exceeds 64 bits");
  return k;
}

std::optional<IntInterval> invert_floor_range(std::int64_t L, std::int64_t R,
                                              const RationalExponent& c) {
  if (L > R) throw Error(Errc::InvalidArgument, "invert_floor_range requires L <= R");
  if (R < 1) return std::nullopt;
  const auto fp = [&](std::uint64_t n) { return floor_pow_saturating(n, c); };
  const auto uR = static_cast<std::uint64_t>(R);

  // c > 1 gives floor(n^c) >= n, so the largest admissible n is at most R.
  std::uint64_t lo = 1, hi = uR;  // largest n with fp(n) <= R; fp(1) = 1 <= R
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (fp(mid) <= uR) lo = mid;
    else hi = mid - 1;
  }
  const std::uint64_t n_hi = lo;

  std::uint64_t n_lo = 1;
  if (L > 1) {
    const auto uL = static_cast<std::uint64_t>(L);
    lo = 1;
    hi = uL;  // fp(L) >= L
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (fp(mid) >= uL) hi = mid;
      else lo = mid + 1;
    }
    n_lo = lo;
  }
  if (n_lo > n_hi) return std::nullopt;

  // Endpoint verification by direct evaluation.
  const auto ok = [&](std::uint64_t n) {
    const std::uint64_t v = fp(n);
    return static_cast<std::int64_t>(v) >= L && v <= uR;
  };
  if (!ok(n_lo) || !ok(n_hi) || (n_lo > 1 && ok(n_lo - 1)) || ok(n_hi + 1))
    throw Error(Errc::InvalidArgument, "floor power inversion failed endpoint check");
  return IntInterval{static_cast<std::int64_t>(n_lo), static_cast<std::int64_t>(n_hi)};
}

std::string integer_root_decimal(const std::string& value, std::uint64_t q) {
  if (q == 0) throw Error(Errc::InvalidArgument, "root index must be positive");
  Mpz x, root;
  if (mpz_set_str(x.get(), value.c_str(), 10) != 0 || mpz_sgn(x.get()) < 0)
    throw Error(Errc::Parse, "not a non-negative decimal integer: " + value);
  integer_root(root, x, q);
  std::unique_ptr<char, void (*)(void*)> s(mpz_get_str(nullptr, 10, root.get()), std::free);
  return s.get();
}

}  // namespace estermann
