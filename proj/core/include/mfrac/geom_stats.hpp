#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mfrac/series.hpp"

namespace mfrac {

enum class Direction { greater, lower };

/// Level A, side of the level, resampling count N and optional sub-range.
struct LevelQuery {
  double level = 0.0;
  Direction direction = Direction::greater;
  std::size_t subintervals = 10000;
  std::optional<std::pair<double, double>> sub_interval;
};

/// The uniform grid T1 + k*delta, k = 0..N, with linearly interpolated values.
struct ResampledSeries {
  double t1;
  double t2;
  double delta;
  std::vector<double> values;
};

/// DomainError for N == 0 or a sub-range that is empty or leaves the series' range.
ResampledSeries resample_for_query(const TimeSeries& x, const LevelQuery& q);

/// delta times the number of grid points with X >= A (greater) or X <= A (lower).
double sojourn(const TimeSeries& x, const LevelQuery& q);

/// delta times the sum of (X - A)_+ (greater) or (A - X)_+ (lower) over the grid.
double exc_area(const TimeSeries& x, const LevelQuery& q);

/// Relative strength index with Wilder smoothing. The first `period` outputs
/// are empty. DataError when fewer than period + 1 prices are given;
/// DomainError for period == 0.
std::vector<std::optional<double>> rs_index(std::span<const double> prices,
                                            std::size_t period = 14);

/// Sign changes of X(t_i) - A across consecutive raw samples. Exact hits carry
/// the previous sign; leading hits are skipped.
std::size_t cross_count(const TimeSeries& x, double level);
/// cross_count / (t_end - t_start).
double cross_rate(const TimeSeries& x, double level);
/// cross_count at the sample mean of X.
std::size_t cross_mean(const TimeSeries& x);

struct StreakStats {
  double longest = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
};

/// Maximal runs of consecutive resampled grid points meeting the level
/// condition; a run of r points lasts r * delta.
StreakStats streak_stats(const TimeSeries& x, const LevelQuery& q);

enum class ExtremumKind { max, min };

struct Extremum {
  double value;
  double time;
};

/// Extreme sample and the earliest time attaining it.
Extremum extremum(const TimeSeries& x, ExtremumKind kind);

}  // namespace mfrac
