#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mfrac/hurst_spec.hpp"
#include "mfrac/series.hpp"

namespace mfrac {

/// Default truncation level of the theoretical covariance sum.
inline constexpr int kDefaultCovTruncation = 8;

/// Symmetric covariance matrix over an ascending time grid, stored row-major.
class CovMatrix {
 public:
  CovMatrix(std::vector<double> grid, std::vector<double> entries);

  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return grid_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * grid_.size() + j];
  }

  friend bool operator==(const CovMatrix&, const CovMatrix&) = default;

 private:
  std::vector<double> grid_;
  std::vector<double> entries_;
};

/// Theoretical covariance of the truncated GHBMP:
///   C(t, t') = sum_{j<=J} sum_k haar_kernel(j,k,H_jk,t) haar_kernel(j,k,H_jk,t').
/// Smoothed with smooth_matrix when theta is given.
CovMatrix cov_ghbmp(std::span<const double> grid, const HurstSpec& hurst,
                    int truncation = kDefaultCovTruncation,
                    std::optional<double> theta = std::nullopt);

/// Empirical covariance with divisor M over realizations sharing one grid.
/// DataError for no realizations or mismatched grids.
CovMatrix est_cov(std::span<const TimeSeries> realizations,
                  std::optional<double> theta = std::nullopt);

/// Separable Gaussian smoothing exp(-d^2 / (2 theta^2)) along each axis, with
/// weights renormalized per row (edge correction), then symmetrized.
/// DomainError for theta <= 0.
CovMatrix smooth_matrix(const CovMatrix& c, double theta);

}  // namespace mfrac
