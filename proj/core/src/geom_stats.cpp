#include "mfrac/geom_stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfrac/error.hpp"

namespace mfrac {

namespace {

bool meets(double v, const LevelQuery& q) {
  return q.direction == Direction::greater ? v >= q.level : v <= q.level;
}

}  // namespace

ResampledSeries resample_for_query(const TimeSeries& x, const LevelQuery& q) {
  if (q.subintervals == 0) throw DomainError("resampling count N must be at least 1");
  double t1 = x.t_start();
  double t2 = x.t_end();
  if (q.sub_interval) {
    const auto [lo, hi] = *q.sub_interval;
    if (!(lo < hi)) throw DomainError("sub-interval must satisfy lo < hi");
    if (lo < t1 || hi > t2) {
      throw DomainError("sub-interval must lie within the series' time range");
    }
    t1 = lo;
    t2 = hi;
  }
  const double delta = (t2 - t1) / static_cast<double>(q.subintervals);
  std::vector<double> grid(q.subintervals + 1);
  for (std::size_t k = 0; k <= q.subintervals; ++k) {
    grid[k] = t1 + static_cast<double>(k) * delta;
  }
  grid.back() = std::min(grid.back(), t2);
  return {t1, t2, delta, interpolate_linear(x.times(), x.values(), grid)};
}

double sojourn(const TimeSeries& x, const LevelQuery& q) {
  const auto r = resample_for_query(x, q);
  std::size_t count = 0;
  for (double v : r.values) {
    if (meets(v, q)) ++count;
  }
  return r.delta * static_cast<double>(count);
}

double exc_area(const TimeSeries& x, const LevelQuery& q) {
  const auto r = resample_for_query(x, q);
  double sum = 0.0;
  for (double v : r.values) {
    const double excess = q.direction == Direction::greater ? v - q.level : q.level - v;
    if (excess > 0.0) sum += excess;
  }
  return r.delta * sum;
}

std::vector<std::optional<double>> rs_index(std::span<const double> prices, std::size_t period) {
  if (period == 0) throw DomainError("RSI period must be at least 1");
  if (prices.size() < period + 1) {
    throw DataError("RSI needs at least " + std::to_string(period + 1) + " prices; got " +
                    std::to_string(prices.size()));
  }
  const double n = static_cast<double>(period);
  std::vector<std::optional<double>> out(prices.size());
  const auto rsi = [](double gain, double loss) {
    if (loss == 0.0) return 100.0;
    return 100.0 - 100.0 / (1.0 + gain / loss);
  };

  double gain = 0.0, loss = 0.0;
  for (std::size_t i = 1; i <= period; ++i) {
    const double change = prices[i] - prices[i - 1];
    gain += std::max(change, 0.0);
    loss += std::max(-change, 0.0);
  }
  gain /= n;
  loss /= n;
  out[period] = rsi(gain, loss);
  for (std::size_t i = period + 1; i < prices.size(); ++i) {
    const double change = prices[i] - prices[i - 1];
    gain = (gain * (n - 1.0) + std::max(change, 0.0)) / n;
    loss = (loss * (n - 1.0) + std::max(-change, 0.0)) / n;
    out[i] = rsi(gain, loss);
  }
  return out;
}

std::size_t cross_count(const TimeSeries& x, double level) {
  int previous = 0;
  std::size_t count = 0;
  for (double v : x.values()) {
    const int sign = v > level ? 1 : (v < level ? -1 : 0);
    if (sign == 0) continue;
    if (previous != 0 && sign != previous) ++count;
    previous = sign;
  }
  return count;
}

double cross_rate(const TimeSeries& x, double level) {
  return static_cast<double>(cross_count(x, level)) / (x.t_end() - x.t_start());
}

std::size_t cross_mean(const TimeSeries& x) {
  double mean = 0.0;
  for (double v : x.values()) mean += v;
  mean /= static_cast<double>(x.size());
  return cross_count(x, mean);
}

StreakStats streak_stats(const TimeSeries& x, const LevelQuery& q) {
  const auto r = resample_for_query(x, q);
  StreakStats s;
  std::size_t run = 0, longest = 0, total = 0;
  const auto close_run = [&] {
    if (run == 0) return;
    longest = std::max(longest, run);
    total += run;
    ++s.count;
    run = 0;
  };
  for (double v : r.values) {
    if (meets(v, q)) {
      ++run;
    } else {
      close_run();
    }
  }
  close_run();
  if (s.count > 0) {
    s.longest = r.delta * static_cast<double>(longest);
    s.mean = r.delta * static_cast<double>(total) / static_cast<double>(s.count);
  }
  return s;
}

Extremum extremum(const TimeSeries& x, ExtremumKind kind) {
  const auto v = x.values();
  const auto it = kind == ExtremumKind::max ? std::max_element(v.begin(), v.end())
                                            : std::min_element(v.begin(), v.end());
  const auto i = static_cast<std::size_t>(it - v.begin());
  return {*it, x.times()[i]};
}

}  // namespace mfrac
