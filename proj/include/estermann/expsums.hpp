#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "estermann/arith.hpp"
#include "estermann/instance.hpp"
#include "estermann/quadrature.hpp"
#include "estermann/sieve.hpp"

namespace estermann {

// e(x) = exp(2 pi i x) for a phase already reduced to [-1/2, 1/2].
Complex unit_phase(double reduced) noexcept;

// sin(x)/x, with the series used for |x| < 1e-4.
long double sinc(long double x) noexcept;

// Exact reduction of alpha * v mod 1.
//
// A finite double alpha is the dyadic rational m / 2^s, so alpha * v mod 1 is
// ((m v) mod 2^s) / 2^s computed in 128-bit integers; only the final
// conversion rounds. An explicit grid point j / M is reduced the same way with
// modulus M.
class PhaseReducer {
 public:
  explicit PhaseReducer(double alpha);
  PhaseReducer(std::int64_t j, std::uint64_t M);

  double alpha() const noexcept { return alpha_; }
  bool has_rational() const noexcept { return grid_modulus_ != 0; }

  // alpha * v mod 1 in [-1/2, 1/2).
  double reduce(std::uint64_t v) const noexcept;
  // alpha * r mod 1 for a rational r >= 0.
  double reduce(const Rational& r) const;
  // alpha * x mod 1 for a real x >= 0; exact on the integer part of x.
  double reduce_real(long double x) const;

  Complex unit(std::uint64_t v) const noexcept { return unit_phase(reduce(v)); }

 private:
  double alpha_;
  bool negative_ = false;
  bool integral_ = false;       // alpha is an integer: every reduction is 0
  std::uint64_t mantissa_ = 0;  // |alpha| = mantissa_ / 2^shift_  (dyadic path)
  int shift_ = 0;
  std::int64_t grid_j_ = 0;     // alpha = grid_j_ / grid_modulus_ (grid path)
  std::uint64_t grid_modulus_ = 0;
};

// sum_i w_i e(alpha f_i) over a fixed list of non-negative integer
// frequencies. Unit weights when `weights` is empty.
class PhaseSum {
 public:
  PhaseSum() = default;
  PhaseSum(std::vector<std::uint64_t> frequencies, std::vector<double> weights = {});

  Complex eval(double alpha) const;
  Complex eval(const PhaseReducer& reducer) const;

  std::size_t size() const noexcept { return freq_.size(); }
  std::span<const std::uint64_t> frequencies() const noexcept { return freq_; }
  double total_weight() const noexcept;

 private:
  std::vector<std::uint64_t> freq_;
  std::vector<double> weight_;
};

// Term lists for the three sums, over the integers n in (x - y, x].
PhaseSum floor_power_terms(long double x, long double y, const RationalExponent& c);
PhaseSum lambda_terms(long double x, long double y, const SieveConfig& config = {});
PhaseSum prime_terms(long double x, long double y, const SieveConfig& config = {});

// S_c(alpha; x, y) = sum_{x-y < n <= x} e(alpha floor(n^c)).
Complex eval_S_c(double alpha, long double x, long double y, const RationalExponent& c);
// S_1(alpha; x, y) = sum_{x-y < n <= x} Lambda(n) e(alpha n).
Complex eval_S1(double alpha, long double x, long double y, const SieveConfig& config = {});
// sum over primes N_k - width < p <= N_k of e(alpha p).
Complex eval_prime_sum(double alpha, long double N_k, long double width,
                       const SieveConfig& config = {});

// Evaluates a term list on a grid, in parallel, results in grid order.
std::vector<Complex> eval_grid(const PhaseSum& sum, std::span<const double> alphas,
                               unsigned threads = 1);

// int_A^B e(alpha u) u^power du, adaptive Gauss-Legendre with at least 20
// nodes per oscillation of alpha u.
Complex integrate_phase_power(double alpha, long double A, long double B, long double power,
                              double abs_tol);

// int_a^b e(alpha t^c) dt through u = t^c. Absolute tolerance 1e-10 (b - a);
// throws ToleranceNotMet if the panel budget runs out.
Complex oscillatory_integral(double alpha, long double a, long double b,
                             const RationalExponent& c);

enum class ApproxForm { Integral, Sinc };

// Main-term approximations of S_c(alpha; N3, H3) for |alpha| <= 1/2:
//   Integral: sinc(pi alpha) e(-alpha/2) int_{N3-H3}^{N3} e(alpha t^c) dt
//   Sinc:     H3 sinc(2 pi alpha H) e(mu_3 N alpha)
Complex approx_S_c(double alpha, const DerivedParams& dp, const RationalExponent& c,
                   ApproxForm form);

// sin(pi alpha y) / (pi alpha) e(alpha (x - y/2)), limit y at alpha = 0.
Complex approx_S1(double alpha, long double x, long double y);

// (1 / ln(mu_k N)) sin(2 pi alpha H) / (pi alpha) e(alpha mu_k N).
Complex approx_prime_sum(double alpha, std::int64_t H, const Rational& mu_k, std::int64_t N);

}  // namespace estermann
