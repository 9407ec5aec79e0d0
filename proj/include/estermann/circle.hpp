#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "estermann/counting.hpp"
#include "estermann/expsums.hpp"
#include "estermann/instance.hpp"

namespace estermann {

enum class IntegrandMode { Exact, Model };

const char* mode_name(IntegrandMode mode) noexcept;

// The generating-function product F(alpha) for one instance.
//
// Exact mode multiplies the three window-indicator sums (primes in windows 1
// and 2, floor values in window 3), so int_{-1/2}^{1/2} F(alpha) e(-alpha N)
// is exactly J_c(N, H). Model mode multiplies the closed-form approximants.
class ArcIntegrand {
 public:
  ArcIntegrand(const ProblemInstance& inst, IntegrandMode mode, const SieveConfig& sieve = {});

  Complex F(double alpha) const;
  // F(alpha) e(-alpha N)
  Complex G(double alpha) const;

  IntegrandMode mode() const noexcept { return mode_; }
  const DerivedParams& params() const noexcept { return dp_; }
  // Largest |frequency| of G; sets the quadrature panel width.
  double max_frequency() const noexcept { return max_frequency_; }

 private:
  ProblemInstance inst_;
  DerivedParams dp_;
  IntegrandMode mode_;
  PhaseSum primes1_, primes2_, floors_;
  double max_frequency_ = 0;
};

Complex integrand_F(double alpha, const ProblemInstance& inst, IntegrandMode mode,
                    const SieveConfig& sieve = {});

// Coefficient of x^N in P1(x) P2(x) V(x) for the window indicator polynomials,
// by integer convolution of the pair sums. Throws MemoryBudgetExceeded when
// the pair-sum histogram does not fit the budget.
std::uint64_t exact_convolution_count(const ProblemInstance& inst, const SieveConfig& sieve = {});

struct SingularIntegral {
  long double value = 0;       // int_{-kappa}^{kappa} sin^3(2 pi a H) / (pi a)^3 da
  long double analytic = 0;    // 3 H^2
  long double tail_bound = 0;  // bound on |value - analytic|
};

// int_0^U sin^3 u / u^3 du and the bound 1/(2U^2) on the discarded tail.
struct SincCubed {
  long double value = 0;
  long double tail_bound = 0;
};
SincCubed sinc_cubed_integral(long double U);

SingularIntegral singular_integral_J(long double H, long double kappa);

struct ArcReport {
  IntegrandMode mode = IntegrandMode::Exact;
  double tol = 0;
  long double kappa = 0;
  bool arc_separation = true;  // false when kappa >= 1/2: I_major is the whole circle
  Complex I_major, I_minor_plus, I_minor_minus;
  double quadrature_error = 0;
  std::size_t panels = 0;
  std::optional<std::uint64_t> exact_total;
  long double model_major = 0;  // 3 H H3 / (2 ln(mu_1 N) ln(mu_2 N))
  long double main_term = 0;    // 3 H^2 / (c (mu_3 N)^(1-1/c) L^2)
  long double remainder_scale = 0;  // H^2 / (N^(1-1/c) L^3)
  SingularIntegral J;
  double minor_arc_profile = 0; // max |S_c(alpha; N3, H3)| / H3 over [kappa, 1/2]

  Complex total() const { return I_major + I_minor_plus + I_minor_minus; }
};

struct ArcConfig {
  SieveConfig sieve;
  unsigned threads = 1;
  std::size_t profile_points = 1000;
  bool compute_exact_total = true;
};

// Integrates F(alpha) e(-alpha N) over [-kappa, kappa], [kappa, 1/2] and
// [-1/2, -kappa] to relative tolerance tol.
ArcReport integrate_arcs(const ProblemInstance& inst, IntegrandMode mode, double tol,
                         const ArcConfig& config = {});

// max_{kappa <= alpha <= 1/2} |S_c(alpha; N3, H3)| / H3 on a uniform grid.
double minor_arc_profile(const ProblemInstance& inst, std::size_t points, unsigned threads = 1);

// asymptotic main term 3 H^2 / (c (mu_3 N)^(1-1/c) L^2)
long double main_term(const ProblemInstance& inst);
// H^2 / (N^(1-1/c) L^3), the size of the final error term. Its L exponent
// is taken as 3; the closing estimate leaves the exponent unbound.
long double remainder_scale(const ProblemInstance& inst);
// 3 H H3 / (2 ln(mu_1 N) ln(mu_2 N))
long double model_major(const ProblemInstance& inst, const DerivedParams& dp);

nlohmann::json to_json(const ArcReport& report);

struct SweepRow {
  std::int64_t N;
  std::string c;
  std::int64_t H;
  long double kappa;
  std::uint64_t exact_total;
  long double main_term;
  long double ratio;
  double I_major_re;
  double I_minor_abs;
};

SweepRow sweep_row(const ProblemInstance& inst, IntegrandMode mode, double tol,
                   const ArcConfig& config = {});
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Shared CSV real formatting: 17 significant digits, '.' decimal.
std::string format_real(double value);

}  // namespace estermann
