#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace estermann {

using Complex = std::complex<double>;

struct GaussRule {
  std::vector<long double> nodes;    // on [-1, 1], ascending
  std::vector<long double> weights;
};

// n-point Gauss-Legendre rule, computed once per n and cached.
const GaussRule& gauss_legendre(std::size_t n);

struct QuadratureResult {
  Complex value;
  double error_estimate = 0;
  std::size_t panels = 0;
};

struct AdaptiveOptions {
  // Target error is max(abs_tol, rel_tol * sum_i |Q_i|) over the initial
  // panel estimates Q_i.
  double abs_tol = 1e-10;
  double rel_tol = 0;
  std::size_t nodes = 20;                 // Gauss-Legendre nodes per panel
  std::size_t max_panels = std::size_t{1} << 22;
  unsigned threads = 1;
};

// Integrates f over each of the given initial panels (consecutive break
// points), bisecting any panel whose two-halves estimate differs from the
// whole-panel estimate by more than its width share of the target. Results are
// summed in order, so the result does not depend on options.threads.
// Throws ToleranceNotMet when max_panels is exhausted.
QuadratureResult integrate_panels(const std::function<Complex(long double)>& f,
                                  std::span<const long double> breaks,
                                  const AdaptiveOptions& options = {});

// Break points splitting [a, b] into `count` equal panels.
std::vector<long double> uniform_breaks(long double a, long double b, std::size_t count);

}  // namespace estermann
