#include "estermann/verify.hpp"

#include <gmp.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "estermann/circle.hpp"
#include "estermann/counting.hpp"
#include "estermann/error.hpp"
#include "estermann/expsums.hpp"
#include "estermann/sieve.hpp"

namespace estermann {

namespace {

const RationalExponent kExponents[] = {{3, 2}, {5, 2}, {7, 4}, {5, 3}};

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// k^q <= n^p < (k+1)^q with plain GMP powers, independent of the root search.
bool floor_pow_bracketed(std::uint64_t n, const RationalExponent& c, std::uint64_t k) {
  mpz_t np, kq, k1q;
  mpz_inits(np, kq, k1q, nullptr);
  mpz_ui_pow_ui(np, n, static_cast<unsigned long>(c.p()));
  mpz_ui_pow_ui(kq, k, static_cast<unsigned long>(c.q()));
  mpz_ui_pow_ui(k1q, k + 1, static_cast<unsigned long>(c.q()));
  const bool ok = mpz_cmp(kq, np) <= 0 && mpz_cmp(np, k1q) < 0;
  mpz_clears(np, kq, k1q, nullptr);
  return ok;
}

// Random valid instance with N in [n_min, n_max] and H in [1, N/4].
ProblemInstance random_instance(std::mt19937_64& rng, std::int64_t n_min, std::int64_t n_max) {
  for (;;) {
    const std::int64_t N = std::uniform_int_distribution<std::int64_t>(n_min, n_max)(rng);
    const std::int64_t d = std::uniform_int_distribution<std::int64_t>(3, 12)(rng);
    const std::int64_t a = std::uniform_int_distribution<std::int64_t>(1, d - 2)(rng);
    const std::int64_t b = std::uniform_int_distribution<std::int64_t>(1, d - 1 - a)(rng);
    const auto frac = [](std::int64_t num, std::int64_t den) {
      const std::int64_t g = gcd64(num, den);
      return Rational(num / g, den / g);
    };
    const std::int64_t H = std::uniform_int_distribution<std::int64_t>(1, std::max<std::int64_t>(1, N / 4))(rng);
    const auto& c = kExponents[std::uniform_int_distribution<int>(0, 3)(rng)];
    try {
      return build_instance(N, c.value(), {frac(a, d), frac(b, d), frac(d - a - b, d)}, H);
    } catch (const Error& e) {
      if (e.code() != Errc::WindowTooWide) throw;
    }
  }
}

CheckResult run_check(const std::string& name, const std::function<std::string()>& body) {
  CheckResult r{name, false, {}};
  try {
    r.detail = body();
    r.passed = r.detail.rfind("FAIL", 0) != 0;
  } catch (const std::exception& e) {
    r.detail = std::string("FAIL exception: ") + e.what();
  }
  return r;
}

}  // namespace

bool VerificationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string VerificationReport::table() const {
  std::ostringstream out;
  std::size_t width = 4;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name << std::string(width - c.name.size() + 2, ' ')
        << c.detail << '\n';
  }
  return out.str();
}

VerificationReport run_verification(bool quick, unsigned threads) {
  VerificationReport report;
  auto add = [&](const std::string& name, const std::function<std::string()>& body) {
    report.checks.push_back(run_check(name, body));
  };

  add("floor_pow_exact", [&]() -> std::string {
    const std::uint64_t limit = quick ? 3000 : 100000;
    for (const auto& c : kExponents)
      for (std::uint64_t n = 1; n <= limit; ++n)
        if (!floor_pow_bracketed(n, c, floor_pow(n, c)))
          return "FAIL n=" + std::to_string(n) + " c=" + c.str();
    return "n <= " + std::to_string(limit) + ", 4 exponents";
  });

  add("invert_floor_range_roundtrip", [&]() -> std::string {
    std::mt19937_64 rng(7);
    const int trials = quick ? 500 : 10000;
    for (int t = 0; t < trials; ++t) {
      const auto& c = kExponents[t % 4];
      const std::int64_t L = std::uniform_int_distribution<std::int64_t>(-5, 200000)(rng);
      const std::int64_t R = L + std::uniform_int_distribution<std::int64_t>(0, 5000)(rng);
      const auto r = invert_floor_range(L, R, c);
      const auto inside = [&](std::int64_t n) {
        if (n < 1) return false;
        const auto v = static_cast<std::int64_t>(floor_pow(static_cast<std::uint64_t>(n), c));
        return L <= v && v <= R;
      };
      if (!r) {
        // No n qualifies: the first n with floor value >= L must exceed R.
        std::int64_t n = 1;
        while (static_cast<std::int64_t>(floor_pow(static_cast<std::uint64_t>(n), c)) < L) ++n;
        if (inside(n)) return std::string("FAIL spurious empty range");
        continue;
      }
      if (!inside(r->lo) || !inside(r->hi) || inside(r->lo - 1) || inside(r->hi + 1))
        return "FAIL L=" + std::to_string(L) + " R=" + std::to_string(R);
    }
    return std::to_string(trials) + " random ranges";
  });

  add("sieve_vs_trial_division", [&]() -> std::string {
    const std::uint64_t limit = 10000;
    const auto primes = primes_in(1, limit);
    std::size_t idx = 0;
    for (std::uint64_t n = 1; n <= limit; ++n) {
      const bool listed = idx < primes.size() && primes[idx] == n;
      if (listed) ++idx;
      if (listed != trial_division_prime(n)) return "FAIL at n=" + std::to_string(n);
    }
    return "n <= 10^4";
  });

  add("psi_10", [&]() -> std::string {
    const long double expected = 3 * std::log(2.0L) + 2 * std::log(3.0L) + std::log(5.0L) + std::log(7.0L);
    const long double got = psi(10);
    if (std::fabs(got - expected) > 1e-15L) return std::string("FAIL psi(10) mismatch");
    return std::string("psi(10) = 3 ln2 + 2 ln3 + ln5 + ln7");
  });

  add("count_oracle_equivalence", [&]() -> std::string {
    std::mt19937_64 rng(2024);
    const int trials = quick ? 20 : 200;
    CountConfig cc;
    cc.threads = threads;
    for (int t = 0; t < trials; ++t) {
      const ProblemInstance inst = random_instance(rng, 50, 2000);
      const auto brute = brute_force_count(inst, cc).total;
      const auto fast = fast_count(inst, cc).total;
      const auto conv = exact_convolution_count(inst);
      if (brute != fast || fast != conv)
        return "FAIL " + to_json(inst).dump() + " brute=" + std::to_string(brute) +
               " fast=" + std::to_string(fast) + " conv=" + std::to_string(conv);
    }
    return std::to_string(trials) + " random instances";
  });

  add("arc_additivity", [&]() -> std::string {
    std::mt19937_64 rng(99);
    const int trials = quick ? 2 : 5;
    ArcConfig ac;
    ac.threads = threads;
    ac.profile_points = 0;
    double worst = 0;
    for (int t = 0; t < trials; ++t) {
      const ProblemInstance inst = random_instance(rng, 200, quick ? 1000 : 3000);
      const ArcReport r = integrate_arcs(inst, IntegrandMode::Exact, 1e-6, ac);
      const double err = std::fabs(r.total().real() - static_cast<double>(*r.exact_total));
      worst = std::max(worst, err);
      if (err >= 0.5) return "FAIL " + to_json(inst).dump() + " error " + std::to_string(err);
    }
    return std::to_string(trials) + " instances, max |error| " + format_real(worst);
  });

  add("approximant_limits", [&]() -> std::string {
    const ProblemInstance inst = build_instance(1000000, Rational(3, 2), {Rational(1, 3), Rational(1, 3), Rational(1, 3)}, 10000);
    const DerivedParams dp = derive_params(inst);
    const Complex a = approx_S_c(0, dp, inst.c(), ApproxForm::Sinc);
    const Complex b = approx_S_c(0, dp, inst.c(), ApproxForm::Integral);
    const Complex s1 = approx_S1(0, 1000, 100);
    const Complex ps = approx_prime_sum(0, 10000, Rational(1, 3), 1000000);
    const double expected_ps = 20000.0 / std::log(1000000.0 / 3.0);
    if (std::abs(a - Complex(static_cast<double>(dp.H3), 0)) > 1e-12 * static_cast<double>(dp.H3) ||
        std::abs(b - Complex(static_cast<double>(dp.H3), 0)) > 1e-12 * static_cast<double>(dp.H3) ||
        std::abs(s1 - Complex(100, 0)) > 1e-12 || std::abs(ps - Complex(expected_ps, 0)) > 1e-9)
      return std::string("FAIL alpha = 0 limits");
    const double zero = std::fabs(approx_S_c(1.0 / 20000, dp, inst.c(), ApproxForm::Sinc).real());
    if (zero > 1e-12 * static_cast<double>(dp.H3)) return std::string("FAIL first sinc zero");
    return std::string("alpha = 0 limits and first sinc zero");
  });

  add("quadrature_self_test", [&]() -> std::string {
    const double alpha = 0.0123;
    const long double A = 3, B = 250;
    const Complex got = integrate_phase_power(alpha, A, B, 0, 1e-12);
    const double two_pi_alpha = 2 * std::numbers::pi * alpha;
    const Complex expected = (unit_phase(PhaseReducer(alpha).reduce_real(B)) -
                              unit_phase(PhaseReducer(alpha).reduce_real(A))) /
                             Complex(0, two_pi_alpha);
    if (std::abs(got - expected) > 1e-10) return std::string("FAIL linear phase closed form");
    const SincCubed s = sinc_cubed_integral(10000);
    const long double three_pi_eighths = 3 * std::numbers::pi_v<long double> / 8;
    if (std::fabs(s.value - three_pi_eighths) > 1e-6L) return std::string("FAIL sin^3 u / u^3 integral");
    return "linear-phase closed form; int sin^3/u^3 = 3 pi / 8 within " +
           format_real(static_cast<double>(std::fabs(s.value - three_pi_eighths)));
  });

  add("conjugate_and_periodicity", [&]() -> std::string {
    const PhaseSum terms = floor_power_terms(5000, 400, RationalExponent(5, 3));
    for (int j = 1; j < 64; ++j) {
      const double alpha = j / 128.0;
      const Complex plus = terms.eval(alpha);
      if (terms.eval(-alpha) != std::conj(plus)) return "FAIL conjugate at j=" + std::to_string(j);
      if (terms.eval(alpha + 1) != plus) return "FAIL period at j=" + std::to_string(j);
    }
    return std::string("S_c on a j/128 grid");
  });

  return report;
}

}  // namespace estermann
