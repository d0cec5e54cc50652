#include "mfrac/series.hpp"

#include <algorithm>
#include <cmath>

#include "mfrac/error.hpp"

namespace mfrac {

TimeSeries::TimeSeries(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size()) {
    throw DataError("time series has " + std::to_string(times_.size()) + " times but " +
                    std::to_string(values_.size()) + " values");
  }
  if (times_.size() < 2) throw DataError("time series needs at least two samples");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || !std::isfinite(values_[i])) {
      throw DataError("non-finite sample at index " + std::to_string(i));
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw DataError("times must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

GridSpec::GridSpec(std::vector<double> points, bool uniform)
    : points_(std::move(points)), uniform_(uniform) {}

GridSpec GridSpec::uniform(double t_start, double t_end, std::size_t n_points) {
  if (n_points < 2) throw DomainError("grid needs at least two points");
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
    throw DomainError("grid requires finite t_start < t_end");
  }
  std::vector<double> pts(n_points);
  const double span = t_end - t_start;
  const double last = static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    pts[i] = t_start + span * (static_cast<double>(i) / last);
  }
  pts.back() = t_end;
  return GridSpec(std::move(pts), true);
}

GridSpec GridSpec::dyadic(int level) {
  if (level < 0 || level > 30) throw DomainError("dyadic grid level must lie in [0, 30]");
  const std::size_t cells = std::size_t{1} << level;
  std::vector<double> pts(cells + 1);
  const double step = std::ldexp(1.0, -level);
  for (std::size_t i = 0; i <= cells; ++i) pts[i] = static_cast<double>(i) * step;
  return GridSpec(std::move(pts), true);
}

GridSpec GridSpec::explicit_points(std::vector<double> points) {
  if (points.size() < 2) throw DomainError("grid needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw DomainError("grid point is not finite");
    if (i > 0 && !(points[i] > points[i - 1])) {
      throw DomainError("grid points must be strictly increasing");
    }
  }
  // Treat as uniform when spacings agree to rounding.
  const double step = (points.back() - points.front()) / static_cast<double>(points.size() - 1);
  bool uniform = true;
  for (std::size_t i = 1; i < points.size() && uniform; ++i) {
    uniform = std::abs((points[i] - points[i - 1]) - step) <= 1e-9 * step;
  }
  return GridSpec(std::move(points), uniform);
}

double GridSpec::step() const noexcept {
  return (points_.back() - points_.front()) / static_cast<double>(points_.size() - 1);
}

namespace {

double lerp_segment(std::span<const double> times, std::span<const double> values,
                    std::size_t i, double t) {
  if (t == times[i]) return values[i];
  const double w = (t - times[i]) / (times[i + 1] - times[i]);
  return values[i] + (values[i + 1] - values[i]) * w;
}

}  // namespace

double interpolate_linear(std::span<const double> times, std::span<const double> values,
                          double t) {
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  // Segment i with times[i] <= t < times[i+1].
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const auto i = static_cast<std::size_t>(it - times.begin()) - 1;
  return lerp_segment(times, values, i, t);
}

std::vector<double> interpolate_linear(std::span<const double> times,
                                       std::span<const double> values,
                                       std::span<const double> queries) {
  std::vector<double> out(queries.size());
  std::size_t i = 0;
  const std::size_t last = times.size() - 1;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const double t = queries[q];
    if (t <= times.front()) {
      out[q] = values.front();
      continue;
    }
    if (t >= times.back()) {
      out[q] = values.back();
      continue;
    }
    if (q > 0 && t < queries[q - 1]) i = 0;
    while (i + 1 < last && times[i + 1] <= t) ++i;
    out[q] = lerp_segment(times, values, i, t);
  }
  return out;
}

}  // namespace mfrac
