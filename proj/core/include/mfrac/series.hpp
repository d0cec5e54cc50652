#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mfrac {

/// Ordered (time, value) samples: the container for every realization.
/// Invariants: equal lengths, at least two samples, strictly increasing times.
class TimeSeries {
 public:
  TimeSeries(std::vector<double> times, std::vector<double> values);

  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return times_.size(); }
  double t_start() const noexcept { return times_.front(); }
  double t_end() const noexcept { return times_.back(); }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

/// Time grid: uniform over [t_start, t_end] or an explicit strictly increasing list.
class GridSpec {
 public:
  static GridSpec uniform(double t_start, double t_end, std::size_t n_points);
  /// [0, 1] with step 2^-level; every point is exactly k / 2^level.
  static GridSpec dyadic(int level);
  static GridSpec explicit_points(std::vector<double> points);

  const std::vector<double>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double t_start() const noexcept { return points_.front(); }
  double t_end() const noexcept { return points_.back(); }
  bool is_uniform() const noexcept { return uniform_; }
  /// Spacing of a uniform grid (undefined for explicit non-uniform grids).
  double step() const noexcept;

 private:
  GridSpec(std::vector<double> points, bool uniform);

  std::vector<double> points_;
  bool uniform_;
};

/// Non-fatal warnings collected while running an operation.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
  bool empty() const noexcept { return warnings.empty(); }
};

/// Piecewise-linear interpolation of (times, values) at `t`. Exact sample
/// values are returned at nodes; queries outside the range are held constant.
double interpolate_linear(std::span<const double> times, std::span<const double> values,
                          double t);

/// Interpolates at an ascending list of query points in one sweep. Produces the
/// same values as calling interpolate_linear point by point.
std::vector<double> interpolate_linear(std::span<const double> times,
                                       std::span<const double> values,
                                       std::span<const double> queries);

}  // namespace mfrac
