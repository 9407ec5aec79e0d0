#include "estermann/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <mutex>

#include "estermann/error.hpp"
#include "estermann/parallel.hpp"
#include "estermann/rational.hpp"

namespace estermann {

namespace {

constexpr char kCacheMagic[5] = {'E', 'S', 'P', 'R', '1'};
constexpr std::uint64_t kMinBaseLimit = 1u << 16;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> simple_sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::mutex g_table_mutex;
std::shared_ptr<const BasePrimeTable> g_table;

std::size_t effective_segment(const SieveConfig& config) {
  const std::size_t by_budget = config.memory_budget_bytes * 8;
  const std::size_t entries = std::min(config.segment_entries, by_budget);
  if (entries < kMinSegmentEntries)
    throw Error(Errc::MemoryBudgetExceeded,
                "memory budget leaves segments below the minimum of " +
                    std::to_string(kMinSegmentEntries) + " entries");
  return entries;
}

}  // namespace

std::uint64_t PrimeSegment::count() const noexcept {
  std::uint64_t total = 0;
  for (auto w : bits) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::optional<std::vector<std::uint64_t>> BasePrimeTable::load_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[5];
  if (!in.read(magic, 5) || !std::equal(magic, magic + 5, kCacheMagic)) return std::nullopt;
  std::vector<std::uint64_t> primes;
  std::uint64_t prev = 0;
  unsigned char buf[8];
  while (in.read(reinterpret_cast<char*>(buf), 8)) {
    std::uint64_t delta = 0;
    for (int i = 7; i >= 0; --i) delta = (delta << 8) | buf[i];
    if (delta == 0) return std::nullopt;
    prev += delta;
    primes.push_back(prev);
  }
  if (in.gcount() != 0) return std::nullopt;  // trailing partial record
  return primes;
}

void BasePrimeTable::save_cache(const std::filesystem::path& path, std::span<const std::uint32_t> primes) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write base-prime cache " + tmp.string());
    out.write(kCacheMagic, 5);
    std::uint64_t prev = 0;
    for (std::uint32_t p : primes) {
      std::uint64_t delta = p - prev;
      prev = p;
      unsigned char buf[8];
      for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(delta >> (8 * i));
      out.write(reinterpret_cast<const char*>(buf), 8);
    }
    if (!out) throw Error(Errc::Io, "short write to base-prime cache " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::shared_ptr<const BasePrimeTable> BasePrimeTable::covering(std::uint64_t limit,
                                                               const SieveConfig& config) {
  std::lock_guard lock(g_table_mutex);
  if (g_table && g_table->limit() >= limit) {
    if (config.cache_path && !std::filesystem::exists(*config.cache_path))
      save_cache(*config.cache_path, g_table->primes());
    return g_table;
  }

  if (config.cache_path) {
    // The file is complete up to its last prime, which is its coverage.
    if (auto cached = load_cache(*config.cache_path); cached && !cached->empty() &&
                                                       cached->back() >= limit &&
                                                       cached->back() <= UINT32_MAX) {
      std::vector<std::uint32_t> primes(cached->begin(), cached->end());
      const std::uint64_t covered = cached->back();
      g_table = std::make_shared<const BasePrimeTable>(covered, std::move(primes));
      return g_table;
    }
  }
  std::uint64_t target = std::max(limit, kMinBaseLimit);
  if (g_table) target = std::max(target, 2 * g_table->limit());
  if (target > UINT32_MAX) throw Error(Errc::Overflow, "base primes beyond 2^32 are not supported");
  auto primes = simple_sieve(target);
  if (config.cache_path) save_cache(*config.cache_path, primes);
  g_table = std::make_shared<const BasePrimeTable>(target, std::move(primes));
  return g_table;
}

PrimeSegment sieve_segment(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  if (hi < lo) throw Error(Errc::InvalidArgument, "segment bounds out of order");
  const std::uint64_t size = hi - lo + 1;
  if (size > config.segment_entries || size > config.memory_budget_bytes * 8)
    throw Error(Errc::MemoryBudgetExceeded, "segment of " + std::to_string(size) +
                                                " entries exceeds the configured segment size");
  PrimeSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  seg.bits.assign((size + 63) / 64, ~std::uint64_t{0});
  if (size % 64 != 0) seg.bits.back() = (std::uint64_t{1} << (size % 64)) - 1;
  auto clear = [&](std::uint64_t n) {
    const auto i = n - lo;
    seg.bits[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  };
  for (std::uint64_t n = lo; n <= std::min<std::uint64_t>(hi, 1); ++n) clear(n);

  const std::uint64_t root = isqrt(hi);
  const auto table = BasePrimeTable::covering(root, config);
  for (std::uint32_t p32 : table->primes()) {
    const std::uint64_t p = p32;
    if (p > root) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (std::uint64_t m = start; m <= hi; m += p) {
      clear(m);
      if (m > hi - p) break;
    }
    std::uint64_t pk = p * p;
    for (std::uint32_t k = 2;; ++k) {
      if (pk >= lo) seg.prime_powers.push_back({pk, k, p});
      if (pk > hi / p) break;
      pk *= p;
    }
  }
  std::sort(seg.prime_powers.begin(), seg.prime_powers.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
  return seg;
}

void for_each_segment(std::uint64_t a, std::uint64_t b, const SieveConfig& config,
                      const std::function<void(const PrimeSegment&)>& visit) {
  if (b < a) return;
  const std::uint64_t step = effective_segment(config);
  SieveConfig seg_config = config;
  seg_config.segment_entries = step;
  for (std::uint64_t lo = a;;) {
    const std::uint64_t hi = (b - lo >= step - 1) ? lo + step - 1 : b;
    visit(sieve_segment(lo, hi, seg_config));
    if (hi == b) break;
    lo = hi + 1;
  }
}

std::vector<std::uint64_t> primes_in(std::uint64_t a, std::uint64_t b, const SieveConfig& config) {
  if (a < 1 || b < a) throw Error(Errc::InvalidArgument, "primes_in requires 1 <= a <= b");
  const long double span = static_cast<long double>(b - a) + 1;
  const long double estimate = 1.3L * span / std::log(std::max<long double>(b, 3)) + 64;
  if (estimate * sizeof(std::uint64_t) > static_cast<long double>(config.memory_budget_bytes))
    throw Error(Errc::MemoryBudgetExceeded, "prime list for [" + std::to_string(a) + ", " +
                                                std::to_string(b) + "] exceeds the memory budget");
  std::vector<std::uint64_t> out;
  for_each_segment(a, b, config, [&](const PrimeSegment& seg) {
    for (std::size_t w = 0; w < seg.bits.size(); ++w) {
      std::uint64_t word = seg.bits[w];
      while (word) {
        const int bit = std::countr_zero(word);
        out.push_back(seg.lo + w * 64 + static_cast<std::uint64_t>(bit));
        word &= word - 1;
      }
    }
  });
  return out;
}

std::uint64_t pi_interval(std::uint64_t x, std::uint64_t y, const SieveConfig& config) {
  if (y == 0 || y > x) throw Error(Errc::InvalidArgument, "pi_interval requires 0 < y <= x");
  std::uint64_t total = 0;
  for_each_segment(x - y + 1, x, config, [&](const PrimeSegment& seg) { total += seg.count(); });
  return total;
}

std::vector<LambdaTerm> lambda_segment(std::uint64_t a, std::uint64_t b, const SieveConfig& config) {
  if (a < 1 || b < a) throw Error(Errc::InvalidArgument, "lambda_segment requires 1 <= a <= b");
  std::vector<LambdaTerm> out;
  for_each_segment(a, b, config, [&](const PrimeSegment& seg) {
    auto power = seg.prime_powers.begin();
    for (std::size_t w = 0; w < seg.bits.size(); ++w) {
      std::uint64_t word = seg.bits[w];
      while (word) {
        const std::uint64_t n = seg.lo + w * 64 + static_cast<std::uint64_t>(std::countr_zero(word));
        for (; power != seg.prime_powers.end() && power->n < n; ++power)
          out.push_back({power->n, power->k, power->p});
        out.push_back({n, 1, n});
        word &= word - 1;
      }
    }
    for (; power != seg.prime_powers.end(); ++power) out.push_back({power->n, power->k, power->p});
  });
  return out;
}

long double psi(std::uint64_t x, const SieveConfig& config) {
  if (x < 1) throw Error(Errc::InvalidArgument, "psi requires x >= 1");
  CompensatedSum<long double> sum;
  for_each_segment(1, x, config, [&](const PrimeSegment& seg) {
    for (std::size_t w = 0; w < seg.bits.size(); ++w) {
      std::uint64_t word = seg.bits[w];
      while (word) {
        const std::uint64_t n = seg.lo + w * 64 + static_cast<std::uint64_t>(std::countr_zero(word));
        sum += std::log(static_cast<long double>(n));
        word &= word - 1;
      }
    }
    for (const auto& pp : seg.prime_powers) sum += std::log(static_cast<long double>(pp.p));
  });
  return sum.value();
}

}  // namespace estermann
