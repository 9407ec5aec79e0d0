#include "estermann/instance.hpp"

#include <quadmath.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "estermann/error.hpp"

namespace estermann {

using quad = __float128;

Rational ProblemInstance::mu_N(int k) const { return mu(k) * N_; }

IntInterval ProblemInstance::window(int k) const {
  // {m : num N - den H <= den m <= num N + den H}
  const Rational& m = mu(k);
  const i128 center = static_cast<i128>(m.num()) * N_;
  const i128 spread = static_cast<i128>(m.den()) * H_;
  const i128 den = m.den();
  auto floor_div = [](i128 a, i128 b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  auto ceil_div = [](i128 a, i128 b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); };
  return IntInterval{static_cast<std::int64_t>(ceil_div(center - spread, den)),
                     static_cast<std::int64_t>(floor_div(center + spread, den))};
}

bool ProblemInstance::in_window(int k, std::int64_t m) const {
  const Rational& mu_k = mu(k);
  i128 diff = static_cast<i128>(mu_k.den()) * m - static_cast<i128>(mu_k.num()) * N_;
  if (diff < 0) diff = -diff;
  return diff <= static_cast<i128>(mu_k.den()) * H_;
}

long double ProblemInstance::log_N() const { return std::log(static_cast<long double>(N_)); }

ProblemInstance build_instance(std::int64_t N, const Rational& c, const std::array<Rational, 3>& mu,
                               std::int64_t H) {
  if (N < 1) throw Error(Errc::InvalidArgument, "N must be a positive integer");
  if (H < 0) throw Error(Errc::InvalidArgument, "H must be non-negative");
  for (const auto& m : mu) {
    if (m.num() <= 0) throw Error(Errc::InvalidArgument, "mu components must be positive");
    const i128 prod = static_cast<i128>(m.num()) * N;
    if (prod > std::numeric_limits<std::int64_t>::max())
      throw Error(Errc::Overflow, "mu_k * N numerator exceeds 64 bits");
  }
  const RationalExponent exponent(c);  // IntegerExponent / ExponentTooSmall
  const Rational sum = mu[0] + mu[1] + mu[2];
  if (sum != Rational(1, 1))
    throw Error(Errc::MuSumNotOne, "mu sums to " + sum.str() + ", not 1");
  for (int k = 0; k < 3; ++k) {
    // Windows stay non-negative: H <= mu_k N  <=>  den H <= num N.
    const Rational& m = mu[static_cast<std::size_t>(k)];
    if (static_cast<i128>(m.den()) * H > static_cast<i128>(m.num()) * N)
      throw Error(Errc::WindowTooWide, "H = " + std::to_string(H) + " exceeds mu_" +
                                           std::to_string(k + 1) + " N");
  }
  return ProblemInstance(N, exponent, mu, H);
}

std::array<Rational, 3> parse_mu(const std::string& text) {
  std::array<Rational, 3> mu;
  std::size_t start = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t comma = text.find(',', start);
    const bool last = k == 2;
    if (last != (comma == std::string::npos))
      throw Error(Errc::Parse, "mu must be three comma-separated rationals: '" + text + "'");
    mu[k] = parse_rational(std::string_view(text).substr(start, last ? std::string::npos : comma - start));
    start = comma + 1;
  }
  return mu;
}

namespace {

quad to_quad(const Rational& r) {
  return static_cast<quad>(r.num()) / static_cast<quad>(r.den());
}

}  // namespace

DerivedParams derive_params(const ProblemInstance& inst) {
  DerivedParams dp;
  dp.N = inst.N();
  dp.H = inst.H();
  const quad N = static_cast<quad>(inst.N());
  const quad H = static_cast<quad>(inst.H());
  const quad c = to_quad(inst.c().value());
  const quad inv_c = static_cast<quad>(inst.c().q()) / static_cast<quad>(inst.c().p());
  const quad L = logq(N);

  for (int k = 0; k < 3; ++k) {
    dp.mu_N_exact[static_cast<std::size_t>(k)] = inst.mu_N(k);
    dp.mu_N[static_cast<std::size_t>(k)] = static_cast<long double>(to_quad(inst.mu_N(k)));
    dp.windows[static_cast<std::size_t>(k)] = inst.window(k);
  }
  const quad mu3N = to_quad(inst.mu_N(2));
  const quad N3 = powq(mu3N + H, inv_c);
  const quad N3_low = powq(mu3N - H, inv_c);

  dp.L = static_cast<long double>(L);
  dp.N1 = static_cast<long double>(to_quad(inst.mu_N(0)) + H);
  dp.N2 = static_cast<long double>(to_quad(inst.mu_N(1)) + H);
  dp.N3 = static_cast<long double>(N3);
  dp.H3 = static_cast<long double>(N3 - N3_low);
  dp.kappa = inst.H() == 0 ? std::numeric_limits<long double>::infinity()
                           : static_cast<long double>(L * L / (2 * c * H));
  dp.N3_leading = static_cast<long double>(powq(mu3N, inv_c) * (1 + H / (c * mu3N)));
  dp.H3_leading = static_cast<long double>(2 * H / (c * powq(mu3N, 1 - inv_c)));
  dp.arc_split_meaningful = dp.kappa > 0 && dp.kappa < 0.5L;
  return dp;
}

HypothesisReport hypothesis_report(const ProblemInstance& inst) {
  const DerivedParams dp = derive_params(inst);
  const long double N = static_cast<long double>(inst.N());
  const long double H = static_cast<long double>(inst.H());
  const long double c = inst.c().as_long_double();
  const long double L = dp.L;
  const long double lnL = std::log(L);

  HypothesisReport r;
  auto add = [&](const char* key, long double lhs, long double rhs, bool holds) {
    r.conditions[key] = Condition{holds, lhs, rhs};
  };

  {
    const long double lhs = inst.c().fractional_distance();
    const long double rhs = 3 * c * (std::ldexp(1.0L, static_cast<int>(inst.c().integer_part()) + 1) - 1) *
                            lnL / L;
    add("cond_c_fractional", lhs, rhs, lhs >= rhs);
  }
  {
    const long double rhs = (4.0L / 3.0L) * (1 + 52 * lnL / L);
    add("cond_c_lower", c, rhs, c > rhs);
  }
  {
    const long double rhs = std::pow(N, 1 - 1 / (2 * c)) * L * L;
    add("cond_H", H, rhs, H >= rhs);
  }
  {
    const long double rhs = std::max(std::pow(dp.N1, 0.534L), std::pow(dp.N2, 0.534L));
    add("cond_lemma4", 2 * H, rhs, 2 * H >= rhs);
  }
  {
    const long double lnN3 = std::log(dp.N3);
    const long double rhs = std::sqrt(2 * c * dp.N3) * lnN3 * lnN3;
    add("cond_lemma56_y", dp.H3, rhs, dp.H3 >= rhs);
  }
  {
    auto bound = [](long double x) { return std::pow(x, 0.625L) * std::pow(std::log(x), 19.5L); };
    const long double rhs = std::max(bound(dp.N1), bound(dp.N2));
    add("cond_lemma8_y", 2 * H, rhs, 2 * H >= rhs);
  }
  r.notes.push_back(
      "cond_c_lower is evaluated as a strict inequality c > (4/3)(1 + 52 ln L / L); the major-arc "
      "evaluation states it non-strictly, which differs only on the boundary");
  r.notes.push_back("cond_lemma4 and cond_lemma8_y take the larger right-hand side over k = 1, 2");
  return r;
}

namespace {

nlohmann::json real_json(long double v) {
  if (!std::isfinite(v)) return nullptr;
  return static_cast<double>(v);
}

nlohmann::json interval_json(const IntInterval& w) { return nlohmann::json::array({w.lo, w.hi}); }

}  // namespace

nlohmann::json to_json(const ProblemInstance& inst) {
  return {{"N", inst.N()},
          {"c", inst.c().str()},
          {"mu", {inst.mu(0).str(), inst.mu(1).str(), inst.mu(2).str()}},
          {"H", inst.H()}};
}

ProblemInstance instance_from_json(const nlohmann::json& j) {
  try {
    const auto rational = [](const nlohmann::json& v) {
      if (v.is_number_integer()) return Rational::integer(v.get<std::int64_t>());
      return parse_rational(v.get<std::string>());
    };
    const auto& mu = j.at("mu");
    if (!mu.is_array() || mu.size() != 3) throw Error(Errc::Parse, "\"mu\" must be an array of three rationals");
    return build_instance(j.at("N").get<std::int64_t>(), rational(j.at("c")),
                          {rational(mu[0]), rational(mu[1]), rational(mu[2])},
                          j.at("H").get<std::int64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("instance JSON: ") + e.what());
  }
}

nlohmann::json to_json(const DerivedParams& dp) {
  return {{"N", dp.N},
          {"H", dp.H},
          {"L", real_json(dp.L)},
          {"mu_N", {real_json(dp.mu_N[0]), real_json(dp.mu_N[1]), real_json(dp.mu_N[2])}},
          {"N1", real_json(dp.N1)},
          {"N2", real_json(dp.N2)},
          {"N3", real_json(dp.N3)},
          {"H3", real_json(dp.H3)},
          {"kappa", real_json(dp.kappa)},
          {"N3_leading", real_json(dp.N3_leading)},
          {"H3_leading", real_json(dp.H3_leading)},
          {"windows", {interval_json(dp.windows[0]), interval_json(dp.windows[1]), interval_json(dp.windows[2])}},
          {"arc_split_meaningful", dp.arc_split_meaningful}};
}

nlohmann::json to_json(const HypothesisReport& report) {
  nlohmann::json conds = nlohmann::json::object();
  for (const auto& [name, cond] : report.conditions)
    conds[name] = {{"holds", cond.holds}, {"lhs", real_json(cond.lhs)}, {"rhs", real_json(cond.rhs)}};
  return {{"conditions", conds}, {"notes", report.notes}};
}

}  // namespace estermann
