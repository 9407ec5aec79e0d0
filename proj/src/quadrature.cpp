#include "estermann/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "estermann/error.hpp"
#include "estermann/parallel.hpp"

namespace estermann {

namespace {

GaussRule build_rule(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const long double pi = std::numbers::pi_v<long double>;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(pi * (static_cast<long double>(i) + 0.75L) / (static_cast<long double>(n) + 0.5L));
    long double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const long double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / static_cast<long double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1;
      dp = static_cast<long double>(n) * (x * p1 - p0) / (x * x - 1);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    const long double w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

Complex apply_rule(const std::function<Complex(long double)>& f, const GaussRule& rule,
                   long double a, long double b) {
  const long double half = (b - a) / 2;
  const long double mid = a + half;
  long double re = 0, im = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Complex v = f(mid + half * rule.nodes[i]);
    re += rule.weights[i] * v.real();
    im += rule.weights[i] * v.imag();
  }
  return {static_cast<double>(re * half), static_cast<double>(im * half)};
}

struct PanelEstimate {
  Complex whole, left, right;
  Complex halves() const { return left + right; }
  double error() const { return std::abs(halves() - whole); }
};

struct Refined {
  Complex value;
  double error = 0;
  std::size_t panels = 0;
};

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "Gauss-Legendre rule needs at least one node");
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<const GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const GaussRule>(build_rule(n));
  return *slot;
}

std::vector<long double> uniform_breaks(long double a, long double b, std::size_t count) {
  if (count == 0) count = 1;
  std::vector<long double> breaks(count + 1);
  for (std::size_t i = 0; i <= count; ++i)
    breaks[i] = a + (b - a) * static_cast<long double>(i) / static_cast<long double>(count);
  breaks.back() = b;
  return breaks;
}

QuadratureResult integrate_panels(const std::function<Complex(long double)>& f,
                                  std::span<const long double> breaks,
                                  const AdaptiveOptions& options) {
  QuadratureResult result;
  if (breaks.size() < 2) return result;
  const GaussRule& rule = gauss_legendre(options.nodes);
  const std::size_t count = breaks.size() - 1;
  const long double width = breaks.back() - breaks.front();

  auto estimate = [&](long double a, long double b) {
    const long double m = a + (b - a) / 2;
    return PanelEstimate{apply_rule(f, rule, a, b), apply_rule(f, rule, a, m), apply_rule(f, rule, m, b)};
  };

  std::vector<PanelEstimate> first(count);
  parallel_for(count, options.threads, [&](std::size_t i) { first[i] = estimate(breaks[i], breaks[i + 1]); });

  CompensatedSum<double> l1;
  for (const auto& e : first) l1 += std::abs(e.halves());
  const double target = std::max(options.abs_tol, options.rel_tol * l1.value());

  std::atomic<std::size_t> used{count};
  std::atomic<bool> exhausted{false};
  auto refine = [&](auto&& self, long double a, long double b, const PanelEstimate& est,
                    double share, int depth) -> Refined {
    const double err = est.error();
    if (err <= share || depth >= 60 || exhausted.load(std::memory_order_relaxed))
      return {est.halves(), err, 1};
    if (used.fetch_add(1) + 1 > options.max_panels) {
      exhausted = true;
      return {est.halves(), err, 1};
    }
    const long double m = a + (b - a) / 2;
    const long double q1 = a + (m - a) / 2, q3 = m + (b - m) / 2;
    const PanelEstimate left{est.left, apply_rule(f, rule, a, q1), apply_rule(f, rule, q1, m)};
    const PanelEstimate right{est.right, apply_rule(f, rule, m, q3), apply_rule(f, rule, q3, b)};
    const Refined l = self(self, a, m, left, share / 2, depth + 1);
    const Refined r = self(self, m, b, right, share / 2, depth + 1);
    return {l.value + r.value, l.error + r.error, l.panels + r.panels};
  };

  std::vector<Refined> refined(count);
  parallel_for(count, options.threads, [&](std::size_t i) {
    const double share = target * static_cast<double>((breaks[i + 1] - breaks[i]) / width);
    refined[i] = refine(refine, breaks[i], breaks[i + 1], first[i], share, 0);
  });

  CompensatedSum<double> re, im, err;
  for (const auto& r : refined) {
    re += r.value.real();
    im += r.value.imag();
    err += r.error;
    result.panels += r.panels;
  }
  result.value = {re.value(), im.value()};
  result.error_estimate = err.value();
  if (exhausted || result.error_estimate > target * 1.0000001)
    throw Error(Errc::ToleranceNotMet,
                "quadrature reached error " + std::to_string(result.error_estimate) +
                    " against target " + std::to_string(target),
                result.error_estimate);
  return result;
}

}  // namespace estermann
