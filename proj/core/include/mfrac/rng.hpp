#pragma once

#include <cstdint>

namespace mfrac {

/// Seed for every stochastic operation. Identical seed and parameters give
/// bit-identical output regardless of evaluation order or thread count.
struct SimSeed {
  std::uint64_t value = 0;

  friend bool operator==(SimSeed, SimSeed) = default;
};

/// Independent random streams keyed off one seed.
enum class Stream : std::uint64_t {
  ghbmp_innovations = 1,
  brownian_increments = 2,
  fgn_spectral = 3,
  fgn_cholesky = 4,
  kmeans_init = 5,
  derived_seeds = 6,
};

/// Counter-based generator: every draw is a pure function of
/// (seed, stream, counter), so draws can be taken in any order.
class CounterRng {
 public:
  constexpr CounterRng(SimSeed seed, Stream stream) noexcept
      : seed_(seed.value), stream_(static_cast<std::uint64_t>(stream)) {}

  std::uint64_t bits(std::uint64_t counter) const noexcept;

  /// Uniform on (0, 1].
  double uniform(std::uint64_t counter) const noexcept;

  /// Standard normal via Box-Muller on counters (2c, 2c+1).
  double normal(std::uint64_t counter) const noexcept;

  /// Uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t counter, std::uint64_t bound) const noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for sub-task `index` (e.g. repetition r of a benchmark).
SimSeed derive_seed(SimSeed parent, std::uint64_t index) noexcept;

}  // namespace mfrac
