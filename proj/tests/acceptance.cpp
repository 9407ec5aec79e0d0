// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "estermann/arith.hpp"
#include "estermann/circle.hpp"
#include "estermann/counting.hpp"
#include "estermann/error.hpp"
#include "estermann/expsums.hpp"
#include "estermann/instance.hpp"
#include "estermann/sieve.hpp"
#include "oracles.hpp"

using namespace estermann;

namespace {

// Goldens from the first full oracle run; see README.
constexpr double kGoldenScSincMax = 0.00456323907;
constexpr double kGoldenRatio[3] = {1.48347683, 1.23353328, 1.17998188};

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

ProblemInstance make(std::int64_t N, const std::string& c, const std::array<Rational, 3>& mu, std::int64_t H) {
  return build_instance(N, parse_rational(c), mu, H);
}

const char* kExponents[] = {"3/2", "5/2", "7/4", "5/3"};

// Random rational mu with every mu_k N >= H.
std::array<Rational, 3> random_mu(std::mt19937_64& rng, std::int64_t N, std::int64_t H) {
  for (;;) {
    const std::int64_t d = std::uniform_int_distribution<std::int64_t>(3, 24)(rng);
    const std::int64_t a = std::uniform_int_distribution<std::int64_t>(1, d - 2)(rng);
    const std::int64_t b = std::uniform_int_distribution<std::int64_t>(1, d - a - 1)(rng);
    const std::int64_t parts[3] = {a, b, d - a - b};
    bool ok = true;
    for (auto p : parts) ok = ok && p * N >= H * d;
    if (!ok) continue;
    return {make_reduced(a, d), make_reduced(b, d), make_reduced(d - a - b, d)};
  }
}

// Smallest H with H^b >= N^a.
std::int64_t ceil_power(std::int64_t N, int a, int b) {
  auto pw = [](unsigned __int128 x, int e) {
    unsigned __int128 r = 1;
    while (e-- > 0) r *= x;
    return r;
  };
  const unsigned __int128 target = pw(static_cast<unsigned __int128>(N), a);
  auto H = static_cast<std::int64_t>(std::pow(static_cast<long double>(N), static_cast<long double>(a) / b));
  while (H > 1 && pw(static_cast<unsigned __int128>(H - 1), b) >= target) --H;
  while (pw(static_cast<unsigned __int128>(H), b) < target) ++H;
  return H;
}

bool within(double value, double golden, double rel) {
  return golden > 0 && std::fabs(value - golden) <= rel * golden;
}

Outcome ac1_oracle_equivalence() {
  std::mt19937_64 rng(1001);
  int mismatches = 0;
  std::uint64_t checksum = 0;
  for (int t = 0; t < 200; ++t) {
    const std::int64_t N = std::uniform_int_distribution<std::int64_t>(50, 2000)(rng);
    const std::int64_t H = std::uniform_int_distribution<std::int64_t>(1, N / 4)(rng);
    const auto inst = make(N, kExponents[t % 4], random_mu(rng, N, H), H);
    const auto brute = brute_force_count(inst).total;
    const auto fast = fast_count(inst).total;
    const auto conv = exact_convolution_count(inst);
    if (brute != fast || fast != conv) ++mismatches;
    checksum += brute;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches over 200 instances, sum of totals " +
                               std::to_string(checksum)};
}

Outcome ac2_arc_additivity() {
  std::mt19937_64 rng(2002);
  double worst = 0;
  double worst_imag = 0;
  for (int t = 0; t < 20; ++t) {
    const std::int64_t N = std::uniform_int_distribution<std::int64_t>(500, 10000)(rng);
    const std::int64_t H = std::uniform_int_distribution<std::int64_t>(N / 50 + 1, N / 8)(rng);
    const auto inst = make(N, kExponents[t % 4], random_mu(rng, N, H), H);
    const ArcReport r = integrate_arcs(inst, IntegrandMode::Exact, 1e-6);
    worst = std::max(worst, std::fabs(r.total().real() - static_cast<double>(*r.exact_total)));
    worst_imag = std::max(worst_imag, std::fabs(r.total().imag()));
  }
  return {worst < 0.5, "max |Re(sum I) - exact| = " + fmt("%.3g", worst) + ", max |Im| = " + fmt("%.3g", worst_imag)};
}

Outcome ac3_singular_integral() {
  const long double target = 3 * std::numbers::pi_v<long double> / 8;
  const SincCubed s = sinc_cubed_integral(4000);
  const double err = static_cast<double>(std::fabs(s.value - target));
  const long double L = std::log(1e6L);
  const long double H = 1e4L;
  const SingularIntegral J = singular_integral_J(H, L * L / (2 * 1.5L * H));
  const double rel = static_cast<double>(std::fabs(J.value - 3 * H * H) / (3 * H * H));
  return {err <= 1e-6 && rel <= 0.05,
          "|int - 3pi/8| = " + fmt("%.3g", err) + ", |J - 3H^2|/3H^2 = " + fmt("%.4g", rel)};
}

Outcome ac4_short_s1() {
  const std::uint64_t x = 10000000;
  const std::int64_t y = ceil_power(static_cast<std::int64_t>(x), 7, 10);
  const long double yl = static_cast<long double>(y);
  const PhaseSum s1 = lambda_terms(static_cast<long double>(x), yl);
  const double amax = static_cast<double>(static_cast<long double>(x) / (2 * std::numbers::pi_v<long double> * yl * yl));
  double worst = 0;
  for (int i = 0; i <= 20; ++i) {
    const double alpha = -amax + 2 * amax * i / 20.0;
    const Complex direct = s1.eval(alpha);
    const Complex model = approx_S1(alpha, static_cast<long double>(x), yl);
    worst = std::max(worst, std::abs(direct - model) / static_cast<double>(y));
  }
  const long double diff = psi(x) - psi(x - static_cast<std::uint64_t>(y));
  const double at0 = static_cast<double>(std::fabs(diff - yl) / yl);
  return {worst <= 0.1 && at0 <= 0.05,
          "y = " + std::to_string(y) + ", max rel error " + fmt("%.4g", worst) + ", alpha = 0 " + fmt("%.4g", at0)};
}

Outcome ac5_sc_sinc() {
  const Rational third(1, 3);
  const auto inst = make(1000000, "3/2", {third, third, third}, 10000);
  const DerivedParams dp = derive_params(inst);
  const PhaseSum sc = floor_power_terms(dp.N3, dp.H3, inst.c());
  double worst = 0;
  for (int i = 0; i <= 20; ++i) {
    const double alpha = static_cast<double>(-dp.kappa + 2 * dp.kappa * i / 20);
    const Complex model = approx_S_c(alpha, dp, inst.c(), ApproxForm::Sinc);
    worst = std::max(worst, std::abs(sc.eval(alpha) - model) / static_cast<double>(dp.H3));
  }
  return {worst <= 0.15 && within(worst, kGoldenScSincMax, 0.01),
          "max |S_c - sinc form| / H3 = " + fmt("%.9g", worst) + " (golden " + fmt("%.9g", kGoldenScSincMax) + ")"};
}

Outcome ac6_short_primes() {
  bool ok = true;
  std::string detail;
  for (int e = 6; e <= 8; ++e) {
    const auto x = static_cast<std::int64_t>(std::llround(std::pow(10.0, e)));
    const std::int64_t y = ceil_power(x, 3, 5);
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t count = pi_interval(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double ratio = static_cast<double>(count) * std::log(static_cast<double>(x)) / static_cast<double>(y);
    ok = ok && ratio >= 0.8 && ratio <= 1.25 && secs < 30;
    detail += "10^" + std::to_string(e) + ": " + fmt("%.4f", ratio) + " (" + fmt("%.2f", secs) + " s) ";
  }
  return {ok, detail};
}

Outcome ac7_floor_exactness() {
  std::size_t bad = 0;
  for (const char* c : kExponents) {
    const RationalExponent e(parse_rational(c));
    for (std::uint64_t n = 1; n <= 100000; ++n)
      if (floor_pow(n, e) != oracle::floor_pow(n, e.p(), e.q())) ++bad;
  }
  std::mt19937_64 rng(7007);
  std::size_t bad_ranges = 0;
  for (int t = 0; t < 10000; ++t) {
    const RationalExponent e(parse_rational(kExponents[t % 4]));
    const std::int64_t L = std::uniform_int_distribution<std::int64_t>(0, 100000000)(rng);
    const std::int64_t R = L + std::uniform_int_distribution<std::int64_t>(0, 100000)(rng);
    const auto r = invert_floor_range(L, R, e);
    auto inside = [&](std::int64_t n) {
      if (n < 1) return false;
      const auto v = static_cast<std::int64_t>(oracle::floor_pow(static_cast<std::uint64_t>(n), e.p(), e.q()));
      return L <= v && v <= R;
    };
    if (!r) {
      // the first n reaching L must already overshoot R
      std::int64_t lo = 1, hi = 2;
      while (static_cast<std::int64_t>(oracle::floor_pow(static_cast<std::uint64_t>(hi), e.p(), e.q())) < L) hi *= 2;
      while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (static_cast<std::int64_t>(oracle::floor_pow(static_cast<std::uint64_t>(mid), e.p(), e.q())) < L)
          lo = mid + 1;
        else
          hi = mid;
      }
      if (inside(lo)) ++bad_ranges;
      continue;
    }
    if (!inside(r->lo) || !inside(r->hi) || inside(r->lo - 1) || inside(r->hi + 1)) ++bad_ranges;
  }
  return {bad == 0 && bad_ranges == 0, std::to_string(bad) + " floor mismatches in 4 x 10^5 values, " +
                                           std::to_string(bad_ranges) + " bad ranges in 10^4"};
}

Outcome ac8_trend() {
  const Rational third(1, 3);
  std::vector<SweepRow> rows;
  for (std::int64_t N : {10000, 100000, 1000000}) {
    const std::int64_t H = ceil_power(N, 4, 5);
    ArcConfig cfg;
    const auto inst = make(N, "3/2", {third, third, third}, H);
    rows.push_back(sweep_row(inst, IntegrandMode::Model, 1e-6, cfg));
    if (rows.back().exact_total != fast_count(inst).total)
      return {false, "convolution and fast count disagree at N=" + std::to_string(N)};
  }
  const std::string csv = sweep_csv(rows);
  std::ofstream("acceptance_sweep.csv") << csv;
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double ratio = static_cast<double>(rows[i].ratio);
    ok = ok && std::isfinite(ratio) && ratio > 0 && within(ratio, kGoldenRatio[i], 0.01);
    detail += "N=" + std::to_string(rows[i].N) + " H=" + std::to_string(rows[i].H) + " ratio " +
              fmt("%.9g", ratio) + "; ";
  }
  return {ok, detail + "written to acceptance_sweep.csv"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 oracle equivalence", ac1_oracle_equivalence},
      {"AC2 arc additivity", ac2_arc_additivity},
      {"AC3 singular integral", ac3_singular_integral},
      {"AC4 short-interval S_1", ac4_short_s1},
      {"AC5 S_c sinc form", ac5_sc_sinc},
      {"AC6 primes in short intervals", ac6_short_primes},
      {"AC7 floor arithmetic", ac7_floor_exactness},
      {"AC8 end-to-end trend", ac8_trend},
  };
  // Runtime budgets stated by the criteria; 0 means none. AC6 times its own sieve.
  const double limits[] = {60, 600, 0, 120, 0, 0, 0, 0};
  int failed = 0;
  int i = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limits[i] > 0 && secs > limits[i]) {
      o.passed = false;
      o.detail += " [over the " + fmt("%.0f", limits[i]) + " s budget]";
    }
    std::printf("%s  %-30s %7.2f s  %s\n", o.passed ? "PASS" : "FAIL", name, secs, o.detail.c_str());
    std::fflush(stdout);
    failed += o.passed ? 0 : 1;
    ++i;
  }
  return failed == 0 ? 0 : 1;
}
