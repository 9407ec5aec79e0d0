#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "estermann/instance.hpp"
#include "estermann/sieve.hpp"

namespace estermann {

struct CountConfig {
  std::uint64_t oracle_limit = 100000;  // brute force refuses N above this
  SieveConfig sieve;
  unsigned threads = 1;
};

struct PerN {
  std::int64_t n;
  std::int64_t v;  // floor(n^c)
  std::uint64_t r; // ordered pairs (p1, p2) in their windows with p1 + p2 = N - v
  friend bool operator==(const PerN&, const PerN&) = default;
};

// J_c(N, H) with its per-n decomposition. Pairs are ordered: (p1, p2) and
// (p2, p1) are distinct solutions when p1 != p2.
struct CountBreakdown {
  std::uint64_t total = 0;
  std::vector<PerN> per_n;
  IntInterval n_range;  // empty when no floor value lands in window 3

  friend bool operator==(const CountBreakdown&, const CountBreakdown&) = default;
};

// Admissible n, i.e. those with floor(n^c) in window 3 (empty if none).
IntInterval admissible_n(const ProblemInstance& inst);

// Triple loop over primes in windows 1, 2 and admissible n.
// Throws OracleLimitExceeded when N > config.oracle_limit.
CountBreakdown brute_force_count(const ProblemInstance& inst, const CountConfig& config = {});

// Window 2 as a prime bitset; for each n and p1 tests bit N - v - p1.
CountBreakdown fast_count(const ProblemInstance& inst, const CountConfig& config = {});

nlohmann::json to_json(const CountBreakdown& count);
std::string to_csv(const CountBreakdown& count);

}  // namespace estermann
