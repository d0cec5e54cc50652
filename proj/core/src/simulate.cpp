#include "mfrac/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "mfrac/error.hpp"
#include "mfrac/haar.hpp"
#include "mfrac/parallel.hpp"

namespace mfrac {

namespace {

// Translates handled per pass over the grid; bounds table memory at large J.
constexpr std::int64_t kTranslateChunk = std::int64_t{1} << 16;

std::vector<double> bridge_fraction(const std::vector<double>& pts) {
  const double t0 = pts.front();
  const double span = pts.back() - t0;
  std::vector<double> s(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) s[i] = (pts[i] - t0) / span;
  s.back() = 1.0;
  return s;
}

}  // namespace

InnovationSource seeded_innovations(SimSeed seed) {
  return [rng = CounterRng(seed, Stream::ghbmp_innovations)](int level, std::int64_t k) {
    const std::uint64_t index = (std::uint64_t{1} << level) + static_cast<std::uint64_t>(k);
    return rng.normal(index);
  };
}

TimeSeries simulate_ghbmp(const GridSpec& grid, const HurstSpec& hurst, int truncation,
                          SimSeed seed, Diagnostics* diag) {
  return simulate_ghbmp(grid, hurst, truncation, seeded_innovations(seed), diag);
}

TimeSeries simulate_ghbmp(const GridSpec& grid, const HurstSpec& hurst, int truncation,
                          const InnovationSource& innovations, Diagnostics* diag) {
  if (truncation < 0) throw DomainError("truncation level J must be nonnegative");
  if (truncation > kMaxTruncation) {
    throw ResourceError("truncation level J = " + std::to_string(truncation) +
                        " exceeds the supported maximum of " + std::to_string(kMaxTruncation));
  }
  const auto& pts = grid.points();
  if (pts.front() < 0.0 || pts.back() > 1.0) {
    throw DomainError("GHBMP grid points must lie in [0, 1]");
  }

  std::vector<double> x(pts.size(), 0.0);
  std::vector<detail::KernelTerm> terms;
  std::size_t clamped = 0;
  const double t_max = pts.back();

  for (int j = 0; j <= truncation; ++j) {
    const std::int64_t count = std::int64_t{1} << j;
    const double scale = std::ldexp(1.0, j);
    for (std::int64_t k0 = 0; k0 < count; k0 += kTranslateChunk) {
      // Every kernel in this chunk vanishes for t <= k0 / 2^j.
      if (static_cast<double>(k0) >= scale * t_max) break;
      const std::int64_t k1 = std::min(count, k0 + kTranslateChunk);
      terms.resize(static_cast<std::size_t>(k1 - k0));
      for (std::int64_t k = k0; k < k1; ++k) {
        const HurstValue h = hurst.eval_checked(j, static_cast<double>(k) / scale);
        if (h.clamped) ++clamped;
        terms[static_cast<std::size_t>(k - k0)] =
            detail::make_kernel_term(j, h.value, innovations(j, k));
      }
      parallel_for(
          pts.size(),
          [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
              x[i] += detail::sum_level_terms(terms, k0, scale, pts[i]);
            }
          },
          64);
    }
  }

  if (clamped > 0 && diag) {
    diag->warn("Hurst function clamped into [1e-6, 1 - 1e-6] at " + std::to_string(clamped) +
               " dyadic points");
  }
  return TimeSeries(pts, std::move(x));
}

TimeSeries simulate_bm(const GridSpec& grid, SimSeed seed) {
  const auto& pts = grid.points();
  const CounterRng rng(seed, Stream::brownian_increments);
  std::vector<double> x(pts.size());
  x[0] = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    x[i] = x[i - 1] + std::sqrt(pts[i] - pts[i - 1]) * rng.normal(i - 1);
  }
  return TimeSeries(pts, std::move(x));
}

TimeSeries simulate_bbridge(const GridSpec& grid, double terminal, SimSeed seed) {
  const TimeSeries bm = simulate_bm(grid, seed);
  const auto s = bridge_fraction(grid.points());
  const auto v = bm.values();
  const double gap = v.back() - terminal;
  std::vector<double> x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x[i] = v[i] - s[i] * gap;
  x.front() = v.front();
  x.back() = terminal;
  return TimeSeries(grid.points(), std::move(x));
}

TimeSeries simulate_fbm(const GridSpec& grid, double hurst, SimSeed seed) {
  if (!grid.is_uniform()) throw DomainError("fBm simulation requires a uniform grid");
  const auto& pts = grid.points();
  const auto noise = simulate_fgn(pts.size() - 1, hurst, seed);
  const double scale = std::pow(grid.step(), hurst);
  std::vector<double> x(pts.size());
  x[0] = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) x[i] = x[i - 1] + scale * noise[i - 1];
  return TimeSeries(pts, std::move(x));
}

TimeSeries simulate_fbbridge(const GridSpec& grid, double hurst, double terminal, SimSeed seed) {
  const TimeSeries fbm = simulate_fbm(grid, hurst, seed);
  const auto s = bridge_fraction(grid.points());
  const auto v = fbm.values();
  const double gap = v.back() - terminal;
  const double e = 2.0 * hurst;
  std::vector<double> x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    x[i] = v[i] - 0.5 * gap * (1.0 + std::pow(s[i], e) - std::pow(1.0 - s[i], e));
  }
  x.front() = v.front();
  x.back() = terminal;
  return TimeSeries(grid.points(), std::move(x));
}

}  // namespace mfrac
