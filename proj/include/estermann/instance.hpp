#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "estermann/arith.hpp"
#include "estermann/rational.hpp"

namespace estermann {

// A validated (N, c, mu, H) bundle. Immutable after construction.
class ProblemInstance {
 public:
  std::int64_t N() const noexcept { return N_; }
  const RationalExponent& c() const noexcept { return c_; }
  const std::array<Rational, 3>& mu() const noexcept { return mu_; }
  const Rational& mu(int k) const { return mu_.at(static_cast<std::size_t>(k)); }
  std::int64_t H() const noexcept { return H_; }

  // mu_k * N as an exact rational.
  Rational mu_N(int k) const;
  // Inclusive integer windows {m : |m - mu_k N| <= H}, k = 0, 1, 2.
  IntInterval window(int k) const;
  // Exact test |m - mu_k N| <= H done as |den*m - num*N| <= den*H.
  bool in_window(int k, std::int64_t m) const;

  // ln N
  long double log_N() const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;

 private:
  friend ProblemInstance build_instance(std::int64_t, const Rational&,
                                        const std::array<Rational, 3>&, std::int64_t);
  ProblemInstance(std::int64_t N, RationalExponent c, std::array<Rational, 3> mu,
                  std::int64_t H)
      : N_(N), c_(c), mu_(mu), H_(H) {}

  std::int64_t N_;
  RationalExponent c_;
  std::array<Rational, 3> mu_;
  std::int64_t H_;
};

// Validates and builds an instance. Errors, in the order they are checked:
// InvalidArgument (N < 1, H < 0, mu_k <= 0, mu_k*N overflow), IntegerExponent,
// ExponentTooSmall, MuSumNotOne, WindowTooWide (H > min mu_k N).
ProblemInstance build_instance(std::int64_t N, const Rational& c,
                               const std::array<Rational, 3>& mu, std::int64_t H);

// Parses "r,r,r".
std::array<Rational, 3> parse_mu(const std::string& text);

struct DerivedParams {
  std::int64_t N = 0;
  std::int64_t H = 0;
  long double L = 0;                    // ln N
  std::array<long double, 3> mu_N{};    // mu_k N
  std::array<Rational, 3> mu_N_exact{};
  long double N1 = 0;                   // mu_1 N + H
  long double N2 = 0;                   // mu_2 N + H
  long double N3 = 0;                   // (mu_3 N + H)^(1/c)
  long double H3 = 0;                   // N3 - (mu_3 N - H)^(1/c)
  long double kappa = 0;                // L^2 / (2 c H)
  long double N3_leading = 0;           // (mu_3 N)^(1/c) (1 + H / (c mu_3 N))
  long double H3_leading = 0;           // 2H / (c (mu_3 N)^(1 - 1/c))
  std::array<IntInterval, 3> windows{};
  bool arc_split_meaningful = false;    // 0 < kappa < 0.5
};

// Pure; the reals are evaluated in binary128 and rounded to long double.
DerivedParams derive_params(const ProblemInstance& inst);

struct Condition {
  bool holds = false;
  long double lhs = 0;
  long double rhs = 0;
};

// Advisory only: nothing downstream refuses to run when a condition fails.
struct HypothesisReport {
  std::map<std::string, Condition> conditions;
  std::vector<std::string> notes;
};

HypothesisReport hypothesis_report(const ProblemInstance& inst);

nlohmann::json to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DerivedParams& dp);
nlohmann::json to_json(const HypothesisReport& report);

}  // namespace estermann
