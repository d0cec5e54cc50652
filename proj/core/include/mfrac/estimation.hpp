#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mfrac/series.hpp"

namespace mfrac {

struct EstimatorParams {
  std::size_t N = 100;  ///< number of subintervals
  std::size_t Q = 2;    ///< grid refinement ratio
  std::size_t L = 2;    ///< increment order
  /// Resample onto exactly N*L coarse points instead of using the data resolution.
  /// Lets short series be estimated; the interpolated increments are smoother.
  bool upsample = false;
};

enum class EstimateKind { hurst, lfd };

/// Per-subinterval estimates of H(t) (or D(t) = 2 - H(t) when kind == lfd).
struct HurstEstimate {
  EstimateKind kind = EstimateKind::hurst;
  std::vector<double> interval_starts;
  std::vector<double> raw;
  std::optional<std::vector<double>> smoothed;
  /// True where both variations vanish (estimate reported as H = 1).
  std::vector<bool> degenerate;
  Diagnostics diagnostics;

  std::size_t size() const noexcept { return raw.size(); }
  bool any_degenerate() const noexcept;
  /// Range the values are clamped to: [0, 1] for hurst, [1, 2] for lfd.
  double lower_bound() const noexcept { return kind == EstimateKind::hurst ? 0.0 : 1.0; }
  double upper_bound() const noexcept { return kind == EstimateKind::hurst ? 1.0 : 2.0; }
};

/// a_l = (-1)^{L-l} binom(L, l), l = 0..L. DomainError for L < 2.
std::vector<double> gqv_coefficients(std::size_t L);

/// Generalized quadratic variation estimator.
///
/// The time range is mapped affinely onto [0, 1]. With n = size - 1 intervals,
/// the coarse grid has M = floor(n / Q) steps and the fine grid Q*M; both are
/// sampled by linear interpolation (every coarse node is a fine node). The
/// increments d_k = sum_l a_l X((k + l)/M) starting in subinterval n give
/// V_M(I_n), and H = clamp(log(V_M / V_QM) / log(Q^2), 0, 1).
///
/// Throws DataError when n < Q*N*L (and upsample is off), DomainError for
/// N < 2, Q < 2 or L < 2.
HurstEstimate estimate_hurst(const TimeSeries& x, const EstimatorParams& params = {});

/// D = 2 - H per subinterval.
HurstEstimate estimate_lfd(const TimeSeries& x, const EstimatorParams& params = {});

/// Converts a Hurst estimate into local fractal dimension (raw and smoothed).
HurstEstimate to_lfd(HurstEstimate est);

/// Local linear regression with tricube weights over the ceil(span * N)
/// nearest neighbours (by interval position), clamped to the estimate's range.
/// DomainError for span <= 0 or span > 1; DataError for an empty estimate.
HurstEstimate smooth_estimates(HurstEstimate est, double span = 0.75);

/// The smoother on its own, over abscissae x (ascending) and values y.
std::vector<double> loess_linear(const std::vector<double>& x, const std::vector<double>& y,
                                 double span);

}  // namespace mfrac
