#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace estermann {

struct SieveConfig {
  // Entries (integers) per segment; bit-packed, so 2^22 entries = 512 KiB.
  std::size_t segment_entries = std::size_t{1} << 22;
  // Upper bound on any single allocation made on behalf of one request.
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
  // Optional base-prime cache file ("ESPR1" + little-endian u64 deltas).
  std::optional<std::filesystem::path> cache_path;
};

inline constexpr std::size_t kMinSegmentEntries = 4096;

// Primality data for [lo, hi]. Bit i of `bits` is set iff lo + i is prime.
// `prime_powers` lists every p^k (k >= 2) in the segment, which together with
// the bits determines the von Mangoldt function on the segment.
struct PrimePower {
  std::uint64_t n;
  std::uint32_t k;
  std::uint64_t p;
};

struct PrimeSegment {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;
  std::vector<std::uint64_t> bits;
  std::vector<PrimePower> prime_powers;

  std::size_t size() const noexcept { return hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0; }
  bool is_prime(std::uint64_t n) const noexcept {
    const auto i = n - lo;
    return (bits[i >> 6] >> (i & 63)) & 1u;
  }
  std::uint64_t count() const noexcept;
};

// Sorted primes up to `limit`. Write-once: a table is never mutated after it
// is published, so concurrent readers need no locking.
class BasePrimeTable {
 public:
  static std::shared_ptr<const BasePrimeTable> covering(std::uint64_t limit,
                                                        const SieveConfig& config);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  // Cache file IO. load() returns nullopt when the file is absent or malformed.
  static std::optional<std::vector<std::uint64_t>> load_cache(const std::filesystem::path& path);
  static void save_cache(const std::filesystem::path& path, std::span<const std::uint32_t> primes);

  BasePrimeTable(std::uint64_t limit, std::vector<std::uint32_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
};

// Sieves one segment. Throws MemoryBudgetExceeded if hi - lo + 1 exceeds the
// configured segment size.
PrimeSegment sieve_segment(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config = {});

// Visits [a, b] as consecutive segments in ascending order.
void for_each_segment(std::uint64_t a, std::uint64_t b, const SieveConfig& config,
                      const std::function<void(const PrimeSegment&)>& visit);

std::vector<std::uint64_t> primes_in(std::uint64_t a, std::uint64_t b,
                                     const SieveConfig& config = {});

// pi(x) - pi(x - y), i.e. the number of primes in (x - y, x].
std::uint64_t pi_interval(std::uint64_t x, std::uint64_t y, const SieveConfig& config = {});

struct LambdaTerm {
  std::uint64_t n;
  std::uint32_t k;
  std::uint64_t p;
  long double value() const { return std::log(static_cast<long double>(p)); }
};

// (n, Lambda(n)) for every prime power n in [a, b], ascending.
std::vector<LambdaTerm> lambda_segment(std::uint64_t a, std::uint64_t b,
                                       const SieveConfig& config = {});

// Chebyshev psi(x) = sum_{n <= x} Lambda(n), compensated summation.
long double psi(std::uint64_t x, const SieveConfig& config = {});

}  // namespace estermann
