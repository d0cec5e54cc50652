#include "mfrac/rng.hpp"

#include <cmath>
#include <numbers>

namespace mfrac {

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
  return mix64(seed_ ^ mix64(stream_ * 0xd1342543de82ef95ULL ^ mix64(counter)));
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t counter) const noexcept {
  const double u1 = uniform(2 * counter);
  const double u2 = uniform(2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t CounterRng::below(std::uint64_t counter, std::uint64_t bound) const noexcept {
  // 128-bit multiply-shift; bias is at most bound / 2^64.
  __extension__ using u128 = unsigned __int128;
  const u128 wide = static_cast<u128>(bits(counter)) * bound;
  return static_cast<std::uint64_t>(wide >> 64);
}

SimSeed derive_seed(SimSeed parent, std::uint64_t index) noexcept {
  return SimSeed{CounterRng(parent, Stream::derived_seeds).bits(index)};
}

}  // namespace mfrac
