#include "mfrac/covariance.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <string>

#include "mfrac/error.hpp"
#include "mfrac/haar.hpp"
#include "mfrac/parallel.hpp"
#include "mfrac/simulate.hpp"

namespace mfrac {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw DataError("covariance grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw DataError("covariance grid contains a non-finite time");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DataError("covariance grid must be strictly increasing");
    }
  }
}

void mirror_upper(std::vector<double>& c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) c[i * n + j] = c[j * n + i];
  }
}

}  // namespace

CovMatrix::CovMatrix(std::vector<double> grid, std::vector<double> entries)
    : grid_(std::move(grid)), entries_(std::move(entries)) {
  check_grid(grid_);
  if (entries_.size() != grid_.size() * grid_.size()) {
    throw DataError("covariance entries do not form a square matrix over the grid");
  }
}

CovMatrix cov_ghbmp(std::span<const double> grid, const HurstSpec& hurst, int truncation,
                    std::optional<double> theta) {
  check_grid(grid);
  if (grid.front() < 0.0 || grid.back() > 1.0) {
    throw DomainError("covariance grid points must lie in [0, 1]");
  }
  if (truncation < 0) throw DomainError("truncation level J must be nonnegative");
  if (truncation > kMaxTruncation) {
    throw ResourceError("truncation level J = " + std::to_string(truncation) +
                        " exceeds the supported maximum of " + std::to_string(kMaxTruncation));
  }
  const std::size_t n = grid.size();
  std::vector<double> c(n * n, 0.0);
  std::vector<double> values;

  for (int j = 0; j <= truncation; ++j) {
    const double scale = std::ldexp(1.0, j);
    const auto active = static_cast<std::int64_t>(
        std::min(std::ceil(scale * grid.back()), scale));
    if (active <= 0) continue;
    // values[k * n + i] = kernel of translate k at grid[i].
    values.assign(static_cast<std::size_t>(active) * n, 0.0);
    for (std::int64_t k = 0; k < active; ++k) {
      const double h = hurst.eval(j, static_cast<double>(k) / scale);
      const auto term = detail::make_kernel_term(j, h, 1.0);
      double* row = values.data() + static_cast<std::size_t>(k) * n;
      for (std::size_t i = 0; i < n; ++i) {
        const double x = scale * grid[i] - static_cast<double>(k);
        if (x > 0.0) row[i] = detail::eval_kernel_term(term, x);
      }
    }
    parallel_for(
        n,
        [&](std::size_t begin, std::size_t end) {
          for (std::size_t i = begin; i < end; ++i) {
            for (std::int64_t k = 0; k < active; ++k) {
              const double* row = values.data() + static_cast<std::size_t>(k) * n;
              const double vi = row[i];
              if (vi == 0.0) continue;
              for (std::size_t l = i; l < n; ++l) c[i * n + l] += vi * row[l];
            }
          }
        },
        8);
  }
  mirror_upper(c, n);
  CovMatrix result(std::vector<double>(grid.begin(), grid.end()), std::move(c));
  if (theta) return smooth_matrix(result, *theta);
  return result;
}

CovMatrix est_cov(std::span<const TimeSeries> realizations, std::optional<double> theta) {
  if (realizations.empty()) throw DataError("empirical covariance needs at least one realization");
  const auto grid = realizations.front().times();
  for (std::size_t r = 1; r < realizations.size(); ++r) {
    const auto other = realizations[r].times();
    if (!std::equal(grid.begin(), grid.end(), other.begin(), other.end())) {
      throw DataError("realization " + std::to_string(r) + " is on a different time grid");
    }
  }
  const std::size_t n = grid.size();
  const double m = static_cast<double>(realizations.size());

  std::vector<double> mean(n, 0.0);
  for (const auto& x : realizations) {
    const auto v = x.values();
    for (std::size_t i = 0; i < n; ++i) mean[i] += v[i];
  }
  for (double& v : mean) v /= m;

  std::vector<double> c(n * n, 0.0);
  std::vector<double> dev(n);
  for (const auto& x : realizations) {
    const auto v = x.values();
    for (std::size_t i = 0; i < n; ++i) dev[i] = v[i] - mean[i];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = i; l < n; ++l) c[i * n + l] += dev[i] * dev[l];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = i; l < n; ++l) c[i * n + l] /= m;
  }
  mirror_upper(c, n);
  CovMatrix result(std::vector<double>(grid.begin(), grid.end()), std::move(c));
  if (theta) return smooth_matrix(result, *theta);
  return result;
}

CovMatrix smooth_matrix(const CovMatrix& c, double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw DomainError("smoothing bandwidth theta must be positive");
  }
  const auto& grid = c.grid();
  const auto n = static_cast<Eigen::Index>(grid.size());
  RowMatrix k(n, n);
  const double denom = 2.0 * theta * theta;
  for (Eigen::Index i = 0; i < n; ++i) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = grid[static_cast<std::size_t>(i)] - grid[static_cast<std::size_t>(j)];
      k(i, j) = std::exp(-d * d / denom);
      total += k(i, j);
    }
    k.row(i) /= total;
  }
  const Eigen::Map<const RowMatrix> input(c.entries().data(), n, n);
  RowMatrix s = k * input * k.transpose();
  const RowMatrix sym = 0.5 * (s + s.transpose());
  return CovMatrix(grid, std::vector<double>(sym.data(), sym.data() + sym.size()));
}

}  // namespace mfrac
