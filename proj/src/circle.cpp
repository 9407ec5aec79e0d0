#include "estermann/circle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "estermann/error.hpp"
#include "estermann/parallel.hpp"

namespace estermann {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

std::vector<std::uint64_t> window_primes(const IntInterval& w, const SieveConfig& sieve) {
  if (w.empty() || w.hi < 2) return {};
  return primes_in(static_cast<std::uint64_t>(std::max<std::int64_t>(w.lo, 1)),
                   static_cast<std::uint64_t>(w.hi), sieve);
}

std::vector<std::uint64_t> window_floors(const ProblemInstance& inst) {
  std::vector<std::uint64_t> out;
  const IntInterval n = admissible_n(inst);
  for (std::int64_t k = n.lo; k <= n.hi; ++k) out.push_back(floor_pow(static_cast<std::uint64_t>(k), inst.c()));
  return out;
}

nlohmann::json complex_json(const Complex& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::json real_json(long double v) {
  if (!std::isfinite(v)) return nullptr;
  return static_cast<double>(v);
}

}  // namespace

const char* mode_name(IntegrandMode mode) noexcept {
  return mode == IntegrandMode::Exact ? "exact" : "model";
}

ArcIntegrand::ArcIntegrand(const ProblemInstance& inst, IntegrandMode mode, const SieveConfig& sieve)
    : inst_(inst), dp_(derive_params(inst)), mode_(mode) {
  if (mode == IntegrandMode::Model) {
    max_frequency_ = 3.0 * static_cast<double>(inst.H());
    return;
  }
  auto p1 = window_primes(inst.window(0), sieve);
  auto p2 = window_primes(inst.window(1), sieve);
  auto v = window_floors(inst);
  if (!p1.empty() && !p2.empty() && !v.empty()) {
    const auto lo = static_cast<std::int64_t>(p1.front() + p2.front() + v.front()) - inst.N();
    const auto hi = static_cast<std::int64_t>(p1.back() + p2.back() + v.back()) - inst.N();
    max_frequency_ = static_cast<double>(std::max(std::abs(lo), std::abs(hi)));
  }
  primes1_ = PhaseSum(std::move(p1));
  primes2_ = PhaseSum(std::move(p2));
  floors_ = PhaseSum(std::move(v));
}

Complex ArcIntegrand::F(double alpha) const {
  if (mode_ == IntegrandMode::Exact) {
    const PhaseReducer reducer(alpha);
    return primes1_.eval(reducer) * primes2_.eval(reducer) * floors_.eval(reducer);
  }
  return approx_prime_sum(alpha, inst_.H(), inst_.mu(0), inst_.N()) *
         approx_prime_sum(alpha, inst_.H(), inst_.mu(1), inst_.N()) *
         approx_S_c(alpha, dp_, inst_.c(), ApproxForm::Sinc);
}

Complex ArcIntegrand::G(double alpha) const {
  const PhaseReducer reducer(alpha);
  return F(alpha) * unit_phase(-reducer.reduce(static_cast<std::uint64_t>(inst_.N())));
}

Complex integrand_F(double alpha, const ProblemInstance& inst, IntegrandMode mode, const SieveConfig& sieve) {
  if (!(std::fabs(alpha) <= 0.5)) throw Error(Errc::InvalidArgument, "integrand_F requires |alpha| <= 1/2");
  return ArcIntegrand(inst, mode, sieve).F(alpha);
}

std::uint64_t exact_convolution_count(const ProblemInstance& inst, const SieveConfig& sieve) {
  const auto P1 = window_primes(inst.window(0), sieve);
  const auto P2 = window_primes(inst.window(1), sieve);
  const auto V = window_floors(inst);
  if (P1.empty() || P2.empty() || V.empty()) return 0;

  // Pair-sum histogram: coefficients of P1(x) P2(x), offset by the smallest sum.
  const std::uint64_t base = P1.front() + P2.front();
  const std::uint64_t length = P1.back() + P2.back() - base + 1;
  if (length * sizeof(std::uint32_t) > sieve.memory_budget_bytes)
    throw Error(Errc::MemoryBudgetExceeded, "pair-sum histogram exceeds the memory budget");
  std::vector<std::uint32_t> pair_sums(length, 0);
  for (const std::uint64_t a : P1)
    for (const std::uint64_t b : P2) ++pair_sums[a + b - base];

  std::uint64_t total = 0;
  const auto N = static_cast<std::uint64_t>(inst.N());
  for (const std::uint64_t v : V) {
    if (v > N) continue;
    const std::uint64_t s = N - v;
    if (s >= base && s - base < length) total += pair_sums[s - base];
  }
  return total;
}

SincCubed sinc_cubed_integral(long double U) {
  if (!(U > 0)) throw Error(Errc::InvalidArgument, "sinc_cubed_integral requires U > 0");
  auto f = [](long double u) -> Complex {
    const long double s = sinc(u);
    return {static_cast<double>(s * s * s), 0.0};
  };
  const auto panels = static_cast<std::size_t>(std::ceil(U));
  const auto breaks = uniform_breaks(0, U, panels);
  AdaptiveOptions opts;
  opts.abs_tol = 1e-13;
  const QuadratureResult q = integrate_panels(f, breaks, opts);
  return {static_cast<long double>(q.value.real()), 1 / (2 * U * U)};
}

SingularIntegral singular_integral_J(long double H, long double kappa) {
  if (!(H > 0) || !(kappa > 0)) throw Error(Errc::InvalidArgument, "singular_integral_J requires H, kappa > 0");
  // alpha = u / (2 pi H) turns the integrand into 8 H^3 sin^3 u / u^3.
  const long double U = 2 * kPi * kappa * H;
  const SincCubed s = sinc_cubed_integral(U);
  const long double scale = 8 * H * H / kPi;
  SingularIntegral out;
  out.value = scale * s.value;
  out.analytic = 3 * H * H;
  out.tail_bound = scale * s.tail_bound;
  return out;
}

long double main_term(const ProblemInstance& inst) {
  const long double H = static_cast<long double>(inst.H());
  const long double c = inst.c().as_long_double();
  const long double L = inst.log_N();
  const long double mu3N = inst.mu_N(2).to_long_double();
  return 3 * H * H / (c * std::pow(mu3N, 1 - 1 / c) * L * L);
}

long double remainder_scale(const ProblemInstance& inst) {
  const long double H = static_cast<long double>(inst.H());
  const long double c = inst.c().as_long_double();
  const long double L = inst.log_N();
  return H * H / (std::pow(static_cast<long double>(inst.N()), 1 - 1 / c) * L * L * L);
}

long double model_major(const ProblemInstance& inst, const DerivedParams& dp) {
  const long double H = static_cast<long double>(inst.H());
  return 3 * H * dp.H3 / (2 * std::log(dp.mu_N[0]) * std::log(dp.mu_N[1]));
}

double minor_arc_profile(const ProblemInstance& inst, std::size_t points, unsigned threads) {
  const DerivedParams dp = derive_params(inst);
  if (!dp.arc_split_meaningful || points == 0 || !(dp.H3 > 0)) return 0;
  const PhaseSum terms = floor_power_terms(dp.N3, dp.H3, inst.c());
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    const long double t = points == 1 ? 0 : static_cast<long double>(i) / static_cast<long double>(points - 1);
    grid[i] = static_cast<double>(dp.kappa + (0.5L - dp.kappa) * t);
  }
  double best = 0;
  for (const Complex& z : eval_grid(terms, grid, threads)) best = std::max(best, std::abs(z));
  return best / static_cast<double>(dp.H3);
}

ArcReport integrate_arcs(const ProblemInstance& inst, IntegrandMode mode, double tol, const ArcConfig& config) {
  if (!(tol > 0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  const ArcIntegrand integrand(inst, mode, config.sieve);
  const DerivedParams& dp = integrand.params();

  ArcReport report;
  report.mode = mode;
  report.tol = tol;
  report.kappa = dp.kappa;
  report.arc_separation = dp.kappa < 0.5L;
  report.model_major = model_major(inst, dp);
  report.main_term = main_term(inst);
  report.remainder_scale = remainder_scale(inst);
  if (inst.H() > 0 && std::isfinite(dp.kappa))
    report.J = singular_integral_J(static_cast<long double>(inst.H()), dp.kappa);

  // Panels no wider than 1.5 periods of the fastest frequency.
  const double K = std::max(1.0, integrand.max_frequency());
  auto integrate = [&](long double a, long double b) {
    const auto count = static_cast<std::size_t>(std::max<long double>(1, std::ceil((b - a) * K / 1.5L)));
    const auto breaks = uniform_breaks(a, b, count);
    AdaptiveOptions opts;
    opts.rel_tol = tol;
    opts.abs_tol = tol;
    opts.threads = config.threads;
    const QuadratureResult q =
        integrate_panels([&](long double alpha) { return integrand.G(static_cast<double>(alpha)); }, breaks, opts);
    report.quadrature_error += q.error_estimate;
    report.panels += q.panels;
    return q.value;
  };

  if (integrand.max_frequency() == 0 && mode == IntegrandMode::Exact &&
      std::abs(integrand.F(0)) == 0) {
    // Some window is empty; the integrand vanishes identically.
  } else if (report.arc_separation) {
    const long double k = dp.kappa;
    report.I_major = integrate(-k, k);
    report.I_minor_plus = integrate(k, 0.5L);
    report.I_minor_minus = integrate(-0.5L, -k);
  } else {
    report.I_major = integrate(-0.5L, 0.5L);
  }

  if (config.compute_exact_total) {
    try {
      report.exact_total = exact_convolution_count(inst, config.sieve);
    } catch (const Error& e) {
      if (e.code() != Errc::MemoryBudgetExceeded) throw;
    }
  }
  if (report.arc_separation && config.profile_points > 0)
    report.minor_arc_profile = minor_arc_profile(inst, config.profile_points, config.threads);
  return report;
}

nlohmann::json to_json(const ArcReport& r) {
  const Complex total = r.total();
  nlohmann::json j = {
      {"mode", mode_name(r.mode)},
      {"tol", r.tol},
      {"kappa", real_json(r.kappa)},
      {"arc_separation", r.arc_separation},
      {"I_major", complex_json(r.I_major)},
      {"I_minor_plus", complex_json(r.I_minor_plus)},
      {"I_minor_minus", complex_json(r.I_minor_minus)},
      {"I_total", complex_json(total)},
      {"quadrature_error", r.quadrature_error},
      {"panels", r.panels},
      {"model_major", real_json(r.model_major)},
      {"main_term", real_json(r.main_term)},
      {"remainder_scale", real_json(r.remainder_scale)},
      {"J", {{"value", real_json(r.J.value)}, {"analytic", real_json(r.J.analytic)}, {"tail_bound", real_json(r.J.tail_bound)}}},
      {"minor_arc_profile", r.minor_arc_profile},
      {"ratio_major_model", r.model_major > 0 ? real_json(r.I_major.real() / r.model_major) : nullptr},
  };
  if (!r.arc_separation) j["flags"] = {"no arc separation"};
  j["notes"] = {
      "remainder_scale uses L^3; the closing estimate writes an unbound exponent A",
      "the tolerance for the integral form of S_c away from alpha = 0 is empirical and is reported, not asserted"};
  if (r.exact_total) {
    const auto exact = static_cast<long double>(*r.exact_total);
    j["exact_total"] = *r.exact_total;
    j["ratio_exact_main"] = r.main_term > 0 ? real_json(exact / r.main_term) : nullptr;
    j["orthogonality_error"] = std::fabs(total.real() - static_cast<double>(exact));
    j["imag_residual"] = std::fabs(total.imag());
  } else {
    j["exact_total"] = nullptr;
  }
  return j;
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

SweepRow sweep_row(const ProblemInstance& inst, IntegrandMode mode, double tol, const ArcConfig& config) {
  ArcConfig arc_config = config;
  arc_config.compute_exact_total = false;
  arc_config.profile_points = 0;
  const ArcReport arcs = integrate_arcs(inst, mode, tol, arc_config);
  SweepRow row;
  row.N = inst.N();
  row.c = inst.c().str();
  row.H = inst.H();
  row.kappa = arcs.kappa;
  row.exact_total = exact_convolution_count(inst, config.sieve);
  row.main_term = arcs.main_term;
  row.ratio = static_cast<long double>(row.exact_total) / row.main_term;
  row.I_major_re = arcs.I_major.real();
  row.I_minor_abs = std::abs(arcs.I_minor_plus + arcs.I_minor_minus);
  return row;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "N,c,H,kappa,exact_total,main_term,ratio,I_major_re,I_minor_abs\n";
  for (const auto& r : rows) {
    out << r.N << ',' << r.c << ',' << r.H << ',' << format_real(static_cast<double>(r.kappa)) << ','
        << r.exact_total << ',' << format_real(static_cast<double>(r.main_term)) << ','
        << format_real(static_cast<double>(r.ratio)) << ',' << format_real(r.I_major_re) << ','
        << format_real(r.I_minor_abs) << '\n';
  }
  return out.str();
}

}  // namespace estermann
