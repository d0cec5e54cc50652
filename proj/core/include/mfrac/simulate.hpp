#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "mfrac/hurst_spec.hpp"
#include "mfrac/rng.hpp"
#include "mfrac/series.hpp"

namespace mfrac {

/// Default truncation level of the GHBMP series.
inline constexpr int kDefaultTruncation = 15;
/// Largest accepted truncation level (2^27 - 1 terms).
inline constexpr int kMaxTruncation = 26;

/// Source of the Gaussian coefficients epsilon_{j,k}.
using InnovationSource = std::function<double(int level, std::int64_t translate)>;

/// The seeded default: epsilon_{j,k} is a pure function of (seed, j, k).
InnovationSource seeded_innovations(SimSeed seed);

/// Gaussian Haar-based multifractional process truncated after level `truncation`:
///   X(t) = sum_{j<=J} sum_k haar_kernel(j, k, H_j(k/2^j), t) * epsilon_{j,k}.
/// Grid points must lie in [0, 1]; X(0) is exactly 0. Clamped Hurst values are
/// reported through `diag` when given.
TimeSeries simulate_ghbmp(const GridSpec& grid, const HurstSpec& hurst, int truncation,
                          SimSeed seed, Diagnostics* diag = nullptr);
TimeSeries simulate_ghbmp(const GridSpec& grid, const HurstSpec& hurst, int truncation,
                          const InnovationSource& innovations, Diagnostics* diag = nullptr);

/// Brownian motion started at 0 with independent N(0, dt) increments.
TimeSeries simulate_bm(const GridSpec& grid, SimSeed seed);

/// Brownian bridge from 0 to `terminal` over the grid's span.
TimeSeries simulate_bbridge(const GridSpec& grid, double terminal, SimSeed seed);

enum class FgnMethod { automatic, circulant, cholesky };

/// Fractional Gaussian noise with autocovariance
/// gamma(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2.
/// `automatic` uses circulant embedding and falls back to Cholesky when the
/// embedding has a negative eigenvalue.
std::vector<double> simulate_fgn(std::size_t n, double hurst, SimSeed seed,
                                 FgnMethod method = FgnMethod::automatic);

/// Autocovariance of unit fractional Gaussian noise at integer lag k.
double fgn_autocovariance(double hurst, std::int64_t lag);

/// Fractional Brownian motion on a uniform grid: scaled cumulative fGn, X(t_0) = 0.
TimeSeries simulate_fbm(const GridSpec& grid, double hurst, SimSeed seed);

/// Fractional Brownian bridge ending at `terminal`.
TimeSeries simulate_fbbridge(const GridSpec& grid, double hurst, double terminal, SimSeed seed);

}  // namespace mfrac
