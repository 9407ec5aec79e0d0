#include "estermann/counting.hpp"

#include <algorithm>
#include <sstream>

#include "estermann/error.hpp"
#include "estermann/parallel.hpp"

namespace estermann {

namespace {

std::vector<std::uint64_t> window_primes(const IntInterval& w, const SieveConfig& config) {
  if (w.empty() || w.hi < 2) return {};
  return primes_in(static_cast<std::uint64_t>(std::max<std::int64_t>(w.lo, 1)),
                   static_cast<std::uint64_t>(w.hi), config);
}

CountBreakdown skeleton(const ProblemInstance& inst) {
  CountBreakdown out;
  out.n_range = admissible_n(inst);
  if (!out.n_range.empty()) {
    out.per_n.reserve(static_cast<std::size_t>(out.n_range.size()));
    for (std::int64_t n = out.n_range.lo; n <= out.n_range.hi; ++n) {
      const auto v = static_cast<std::int64_t>(floor_pow(static_cast<std::uint64_t>(n), inst.c()));
      out.per_n.push_back({n, v, 0});
    }
  }
  return out;
}

}  // namespace

IntInterval admissible_n(const ProblemInstance& inst) {
  const IntInterval w = inst.window(2);
  if (w.empty()) return {};
  const auto r = invert_floor_range(w.lo, w.hi, inst.c());
  return r ? *r : IntInterval{};
}

CountBreakdown brute_force_count(const ProblemInstance& inst, const CountConfig& config) {
  if (static_cast<std::uint64_t>(inst.N()) > config.oracle_limit)
    throw Error(Errc::OracleLimitExceeded, "N = " + std::to_string(inst.N()) +
                                               " exceeds the brute-force limit " +
                                               std::to_string(config.oracle_limit));
  CountBreakdown out = skeleton(inst);
  const auto P1 = window_primes(inst.window(0), config.sieve);
  const auto P2 = window_primes(inst.window(1), config.sieve);
  for (auto& entry : out.per_n) {
    if (!inst.in_window(2, entry.v)) throw Error(Errc::InvalidArgument, "floor value escaped window 3");
    for (const std::uint64_t p1 : P1) {
      for (const std::uint64_t p2 : P2) {
        const auto sum = static_cast<std::int64_t>(p1 + p2) + entry.v;
        if (sum == inst.N() && inst.in_window(0, static_cast<std::int64_t>(p1)) &&
            inst.in_window(1, static_cast<std::int64_t>(p2)))
          ++entry.r;
      }
    }
    out.total += entry.r;
  }
  return out;
}

CountBreakdown fast_count(const ProblemInstance& inst, const CountConfig& config) {
  CountBreakdown out = skeleton(inst);
  const IntInterval w2 = inst.window(1);
  if (out.per_n.empty() || w2.empty() || w2.hi < 2) return out;
  const auto P1 = window_primes(inst.window(0), config.sieve);
  if (P1.empty()) return out;

  const auto span = static_cast<std::uint64_t>(w2.size());
  if (span / 8 > config.sieve.memory_budget_bytes)
    throw Error(Errc::MemoryBudgetExceeded, "window 2 bitset exceeds the memory budget");
  std::vector<std::uint64_t> bits((span + 63) / 64, 0);
  const auto base = static_cast<std::uint64_t>(w2.lo);
  for (const std::uint64_t p : window_primes(w2, config.sieve)) {
    const std::uint64_t i = p - base;
    bits[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  parallel_for(out.per_n.size(), config.threads, [&](std::size_t idx) {
    auto& entry = out.per_n[idx];
    const std::int64_t target = inst.N() - entry.v;
    // p1 in [target - w2.hi, target - w2.lo]
    const std::int64_t lo = target - w2.hi, hi = target - w2.lo;
    if (hi < 2) return;
    auto first = std::lower_bound(P1.begin(), P1.end(), static_cast<std::uint64_t>(std::max<std::int64_t>(lo, 0)));
    std::uint64_t r = 0;
    for (auto it = first; it != P1.end() && static_cast<std::int64_t>(*it) <= hi; ++it) {
      const auto i = static_cast<std::uint64_t>(target - static_cast<std::int64_t>(*it)) - base;
      r += (bits[i >> 6] >> (i & 63)) & 1u;
    }
    entry.r = r;
  });
  for (const auto& e : out.per_n) out.total += e.r;
  return out;
}

nlohmann::json to_json(const CountBreakdown& count) {
  nlohmann::json per_n = nlohmann::json::array();
  for (const auto& e : count.per_n) per_n.push_back({e.n, e.v, e.r});
  nlohmann::json j = {{"total", count.total}, {"per_n", per_n}};
  if (count.n_range.empty()) {
    j["n_lo"] = nullptr;
    j["n_hi"] = nullptr;
  } else {
    j["n_lo"] = count.n_range.lo;
    j["n_hi"] = count.n_range.hi;
  }
  return j;
}

std::string to_csv(const CountBreakdown& count) {
  std::ostringstream out;
  out << "n,v,r\n";
  for (const auto& e : count.per_n) out << e.n << ',' << e.v << ',' << e.r << '\n';
  return out.str();
}

}  // namespace estermann
