#include "estermann/expsums.hpp"

#include <cmath>
#include <numbers>

#include "estermann/error.hpp"
#include "estermann/parallel.hpp"

namespace estermann {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double wrap_half(long double t) {
  t -= std::nearbyint(t);
  return static_cast<double>(t);
}

}  // namespace

Complex unit_phase(double reduced) noexcept {
  if (reduced == 0.5 || reduced == -0.5) return {-1.0, 0.0};
  const double angle = kTwoPi * reduced;
  return {std::cos(angle), std::sin(angle)};
}

long double sinc(long double x) noexcept {
  if (std::fabs(x) < 1e-4L) {
    const long double x2 = x * x;
    return 1 - x2 / 6 + x2 * x2 / 120;
  }
  return std::sin(x) / x;
}

PhaseReducer::PhaseReducer(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha)) throw Error(Errc::InvalidArgument, "alpha must be finite");
  if (alpha == 0) {
    integral_ = true;
    return;
  }
  negative_ = alpha < 0;
  int e = 0;
  const double f = std::frexp(std::fabs(alpha), &e);  // |alpha| = f 2^e, f in [0.5, 1)
  mantissa_ = static_cast<std::uint64_t>(std::ldexp(f, 53));
  shift_ = 53 - e;
  while (shift_ > 0 && (mantissa_ & 1u) == 0) {
    mantissa_ >>= 1;
    --shift_;
  }
  integral_ = shift_ <= 0;
}

PhaseReducer::PhaseReducer(std::int64_t j, std::uint64_t M)
    : alpha_(static_cast<double>(static_cast<long double>(j) / static_cast<long double>(M))),
      grid_modulus_(M) {
  if (M == 0 || M > (std::uint64_t{1} << 62))
    throw Error(Errc::InvalidArgument, "grid modulus must lie in [1, 2^62]");
  i128 r = static_cast<i128>(j) % static_cast<i128>(M);
  if (r < 0) r += static_cast<i128>(M);
  grid_j_ = static_cast<std::int64_t>(r);
  integral_ = grid_j_ == 0;
}

double PhaseReducer::reduce(std::uint64_t v) const noexcept {
  if (integral_ || v == 0) return 0;
  if (grid_modulus_ != 0) {
    // Centre in integers first so that j and -j give results of equal magnitude.
    i128 r = static_cast<i128>(static_cast<u128>(grid_j_) * v % grid_modulus_);
    if (2 * r >= static_cast<i128>(grid_modulus_)) r -= static_cast<i128>(grid_modulus_);
    return static_cast<double>(static_cast<long double>(r) / static_cast<long double>(grid_modulus_));
  }
  const u128 prod = static_cast<u128>(mantissa_) * v;  // < 2^117
  long double frac;
  if (shift_ >= 127) {
    frac = std::ldexp(static_cast<long double>(prod), -shift_);
  } else {
    const u128 mask = (u128{1} << shift_) - 1;
    frac = std::ldexp(static_cast<long double>(prod & mask), -shift_);
  }
  const double t = wrap_half(frac);
  return negative_ ? -t : t;
}

double PhaseReducer::reduce(const Rational& r) const {
  if (r.num() < 0) throw Error(Errc::InvalidArgument, "phase reduction expects a non-negative rational");
  const auto whole = static_cast<std::uint64_t>(r.floor());
  const std::int64_t rem = r.num() - r.floor() * r.den();
  const long double part = static_cast<long double>(alpha_) * static_cast<long double>(rem) /
                           static_cast<long double>(r.den());
  return wrap_half(static_cast<long double>(reduce(whole)) + part);
}

double PhaseReducer::reduce_real(long double x) const {
  if (!(x >= 0)) throw Error(Errc::InvalidArgument, "phase reduction expects a non-negative real");
  const long double ip = std::floor(x);
  const long double part = static_cast<long double>(alpha_) * (x - ip);
  return wrap_half(static_cast<long double>(reduce(static_cast<std::uint64_t>(ip))) + part);
}

PhaseSum::PhaseSum(std::vector<std::uint64_t> frequencies, std::vector<double> weights)
    : freq_(std::move(frequencies)), weight_(std::move(weights)) {
  if (!weight_.empty() && weight_.size() != freq_.size())
    throw Error(Errc::InvalidArgument, "phase sum weights and frequencies differ in length");
}

Complex PhaseSum::eval(double alpha) const { return eval(PhaseReducer(alpha)); }

Complex PhaseSum::eval(const PhaseReducer& reducer) const {
  CompensatedSum<double> re, im;
  if (weight_.empty()) {
    for (const std::uint64_t f : freq_) {
      const Complex z = reducer.unit(f);
      re += z.real();
      im += z.imag();
    }
  } else {
    for (std::size_t i = 0; i < freq_.size(); ++i) {
      const Complex z = reducer.unit(freq_[i]);
      re += weight_[i] * z.real();
      im += weight_[i] * z.imag();
    }
  }
  return {re.value(), im.value()};
}

double PhaseSum::total_weight() const noexcept {
  if (weight_.empty()) return static_cast<double>(freq_.size());
  CompensatedSum<double> s;
  for (double w : weight_) s += w;
  return s.value();
}

namespace {

// Integers n with x - y < n <= x, clipped to n >= 1.
IntInterval half_open_range(long double x, long double y) {
  if (!(y > 0) || !(y <= x)) throw Error(Errc::InvalidArgument, "sums require 0 < y <= x");
  const auto lo = static_cast<std::int64_t>(std::floor(x - y)) + 1;
  const auto hi = static_cast<std::int64_t>(std::floor(x));
  return {std::max<std::int64_t>(lo, 1), hi};
}

}  // namespace

PhaseSum floor_power_terms(long double x, long double y, const RationalExponent& c) {
  const IntInterval r = half_open_range(x, y);
  std::vector<std::uint64_t> freq;
  freq.reserve(static_cast<std::size_t>(r.size()));
  for (std::int64_t n = r.lo; n <= r.hi; ++n) freq.push_back(floor_pow(static_cast<std::uint64_t>(n), c));
  return PhaseSum(std::move(freq));
}

PhaseSum lambda_terms(long double x, long double y, const SieveConfig& config) {
  const IntInterval r = half_open_range(x, y);
  std::vector<std::uint64_t> freq;
  std::vector<double> weight;
  if (!r.empty()) {
    for (const auto& t : lambda_segment(static_cast<std::uint64_t>(r.lo), static_cast<std::uint64_t>(r.hi), config)) {
      freq.push_back(t.n);
      weight.push_back(static_cast<double>(t.value()));
    }
  }
  return PhaseSum(std::move(freq), std::move(weight));
}

PhaseSum prime_terms(long double x, long double y, const SieveConfig& config) {
  const IntInterval r = half_open_range(x, y);
  if (r.empty()) return {};
  return PhaseSum(primes_in(static_cast<std::uint64_t>(r.lo), static_cast<std::uint64_t>(r.hi), config));
}

Complex eval_S_c(double alpha, long double x, long double y, const RationalExponent& c) {
  return floor_power_terms(x, y, c).eval(alpha);
}

Complex eval_S1(double alpha, long double x, long double y, const SieveConfig& config) {
  return lambda_terms(x, y, config).eval(alpha);
}

Complex eval_prime_sum(double alpha, long double N_k, long double width, const SieveConfig& config) {
  return prime_terms(N_k, width, config).eval(alpha);
}

std::vector<Complex> eval_grid(const PhaseSum& sum, std::span<const double> alphas, unsigned threads) {
  std::vector<Complex> out(alphas.size());
  parallel_for(alphas.size(), threads, [&](std::size_t i) { out[i] = sum.eval(alphas[i]); });
  return out;
}

Complex integrate_phase_power(double alpha, long double A, long double B, long double power,
                              double abs_tol) {
  if (!(A > 0) || !(A < B)) throw Error(Errc::InvalidArgument, "integration bounds must satisfy 0 < A < B");
  const long double a = alpha;
  auto f = [&](long double u) -> Complex {
    const Complex z = unit_phase(wrap_half(a * u));
    const double amp = power == 0 ? 1.0 : static_cast<double>(std::pow(u, power));
    return z * amp;
  };
  const long double cycles = std::fabs(a) * (B - A);
  const auto panels = static_cast<std::size_t>(std::max<long double>(1, std::ceil(cycles)));
  const auto breaks = uniform_breaks(A, B, panels);
  AdaptiveOptions opts;
  opts.abs_tol = abs_tol;
  opts.nodes = 20;
  return integrate_panels(f, breaks, opts).value;
}

namespace {

// (1/c) int_A^B e(alpha u) u^(1/c - 1) du
Complex substituted_integral(double alpha, long double A, long double B, const RationalExponent& c,
                             long double t_length) {
  const long double inv_c = static_cast<long double>(c.q()) / static_cast<long double>(c.p());
  const double tol = static_cast<double>(1e-10L * t_length / inv_c);
  return integrate_phase_power(alpha, A, B, inv_c - 1, tol) * static_cast<double>(inv_c);
}

}  // namespace

Complex oscillatory_integral(double alpha, long double a, long double b, const RationalExponent& c) {
  if (!(a > 0) || !(a < b)) throw Error(Errc::InvalidArgument, "oscillatory_integral requires 0 < a < b");
  if (alpha == 0) return {static_cast<double>(b - a), 0.0};
  const long double cc = c.as_long_double();
  return substituted_integral(alpha, std::pow(a, cc), std::pow(b, cc), c, b - a);
}

Complex approx_S_c(double alpha, const DerivedParams& dp, const RationalExponent& c, ApproxForm form) {
  if (!(std::fabs(alpha) <= 0.5)) throw Error(Errc::InvalidArgument, "approx_S_c requires |alpha| <= 1/2");
  if (alpha == 0) return {static_cast<double>(dp.H3), 0.0};
  const long double pi = std::numbers::pi_v<long double>;
  if (form == ApproxForm::Sinc) {
    const PhaseReducer reducer(alpha);
    const long double mag = dp.H3 * sinc(2 * pi * alpha * static_cast<long double>(dp.H));
    return unit_phase(reducer.reduce(dp.mu_N_exact[2])) * static_cast<double>(mag);
  }
  // u = t^c runs over [mu_3 N - H, mu_3 N + H] exactly.
  const long double A = dp.mu_N[2] - static_cast<long double>(dp.H);
  const long double B = dp.mu_N[2] + static_cast<long double>(dp.H);
  const Complex integral = substituted_integral(alpha, A, B, c, dp.H3);
  return integral * unit_phase(-alpha / 2) * static_cast<double>(sinc(pi * alpha));
}

Complex approx_S1(double alpha, long double x, long double y) {
  if (!(std::fabs(alpha) <= 0.5)) throw Error(Errc::InvalidArgument, "approx_S1 requires |alpha| <= 1/2");
  if (alpha == 0) return {static_cast<double>(y), 0.0};
  const long double pi = std::numbers::pi_v<long double>;
  const PhaseReducer reducer(alpha);
  const long double mag = y * sinc(pi * alpha * y);
  return unit_phase(reducer.reduce_real(x - y / 2)) * static_cast<double>(mag);
}

Complex approx_prime_sum(double alpha, std::int64_t H, const Rational& mu_k, std::int64_t N) {
  if (!(std::fabs(alpha) <= 0.5)) throw Error(Errc::InvalidArgument, "approx_prime_sum requires |alpha| <= 1/2");
  const Rational center = mu_k * N;
  const long double log_center = std::log(center.to_long_double());
  const long double pi = std::numbers::pi_v<long double>;
  const long double mag = 2 * static_cast<long double>(H) * sinc(2 * pi * alpha * static_cast<long double>(H)) / log_center;
  if (alpha == 0) return {static_cast<double>(mag), 0.0};
  return unit_phase(PhaseReducer(alpha).reduce(center)) * static_cast<double>(mag);
}

}  // namespace estermann
