#include "mfrac/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mfrac/error.hpp"

namespace mfrac {

namespace {

void check_params(const EstimatorParams& p) {
  if (p.N < 2) throw DomainError("estimator needs N >= 2 subintervals");
  if (p.Q < 2) throw DomainError("estimator needs Q >= 2");
  if (p.L < 2) throw DomainError("estimator needs increment order L >= 2");
}

struct Variation {
  std::vector<double> sum_sq;
  std::vector<std::size_t> count;
};

// Squared increments of order L on samples X[0..M], grouped by the subinterval
// containing the left end k/M.
Variation variations(const std::vector<double>& samples, const std::vector<double>& a,
                     std::size_t n_intervals) {
  const std::size_t m = samples.size() - 1;
  const std::size_t order = a.size() - 1;
  Variation v{std::vector<double>(n_intervals, 0.0), std::vector<std::size_t>(n_intervals, 0)};
  for (std::size_t k = 0; k + order <= m; ++k) {
    double d = 0.0;
    for (std::size_t l = 0; l <= order; ++l) d += a[l] * samples[k + l];
    const std::size_t cell = std::min(k * n_intervals / m, n_intervals - 1);
    v.sum_sq[cell] += d * d;
    ++v.count[cell];
  }
  return v;
}

// Folds subintervals without increments into their right neighbour (left for
// the last one) so each reported interval still has a variation.
std::size_t merge_empty(Variation& v) {
  std::size_t merged = 0;
  const std::size_t n = v.count.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (v.count[i] > 0) continue;
    std::size_t j = i + 1;
    while (j < n && v.count[j] == 0) ++j;
    if (j == n) {
      j = i;
      while (j > 0 && v.count[j] == 0) --j;
    }
    if (v.count[j] == 0) throw DataError("no increments available for estimation");
    v.sum_sq[i] = v.sum_sq[j];
    v.count[i] = v.count[j];
    ++merged;
  }
  return merged;
}

}  // namespace

bool HurstEstimate::any_degenerate() const noexcept {
  return std::find(degenerate.begin(), degenerate.end(), true) != degenerate.end();
}

std::vector<double> gqv_coefficients(std::size_t L) {
  if (L < 2) throw DomainError("increment order L must be at least 2");
  std::vector<double> a(L + 1);
  double binom = 1.0;
  for (std::size_t l = 0; l <= L; ++l) {
    a[l] = ((L - l) % 2 == 0) ? binom : -binom;
    binom = binom * static_cast<double>(L - l) / static_cast<double>(l + 1);
  }
  return a;
}

HurstEstimate estimate_hurst(const TimeSeries& x, const EstimatorParams& params) {
  check_params(params);
  const std::size_t n = x.size() - 1;
  const std::size_t needed = params.Q * params.N * params.L;
  std::size_t coarse = n / params.Q;
  if (params.upsample) {
    coarse = std::max(coarse, params.N * params.L);
  } else if (n < needed) {
    throw DataError("estimation needs at least " + std::to_string(needed + 1) +
                    " samples for N = " + std::to_string(params.N) + ", Q = " +
                    std::to_string(params.Q) + ", L = " + std::to_string(params.L) + "; got " +
                    std::to_string(x.size()));
  }
  const std::size_t fine = params.Q * coarse;

  const double t0 = x.t_start();
  const double span = x.t_end() - t0;
  std::vector<double> queries(fine + 1);
  for (std::size_t k = 0; k <= fine; ++k) {
    queries[k] = t0 + span * (static_cast<double>(k) / static_cast<double>(fine));
  }
  queries.back() = x.t_end();
  const std::vector<double> fine_samples = interpolate_linear(x.times(), x.values(), queries);
  std::vector<double> coarse_samples(coarse + 1);
  for (std::size_t k = 0; k <= coarse; ++k) coarse_samples[k] = fine_samples[k * params.Q];

  const auto a = gqv_coefficients(params.L);
  Variation vc = variations(coarse_samples, a, params.N);
  Variation vf = variations(fine_samples, a, params.N);

  HurstEstimate est;
  const std::size_t merged = merge_empty(vc) + merge_empty(vf);
  if (merged > 0) {
    est.diagnostics.warn(std::to_string(merged) +
                         " subinterval variations merged with a neighbour (no increments)");
  }

  // Variations at or below the rounding floor of the increments count as zero.
  double abs_a = 0.0;
  for (double c : a) abs_a += std::abs(c);
  double max_x = 0.0;
  for (double v : x.values()) max_x = std::max(max_x, std::abs(v));
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * abs_a * max_x;
  const double zero_level = noise * noise;
  const double log_q2 = std::log(static_cast<double>(params.Q * params.Q));

  est.interval_starts.resize(params.N);
  est.raw.resize(params.N);
  est.degenerate.assign(params.N, false);
  std::size_t degenerate = 0;
  for (std::size_t i = 0; i < params.N; ++i) {
    est.interval_starts[i] =
        t0 + span * (static_cast<double>(i) / static_cast<double>(params.N));
    const double v_coarse = vc.sum_sq[i] / static_cast<double>(vc.count[i]);
    const double v_fine = vf.sum_sq[i] / static_cast<double>(vf.count[i]);
    const bool coarse_zero = v_coarse <= zero_level;
    const bool fine_zero = v_fine <= zero_level;
    double h;
    if (coarse_zero && fine_zero) {
      h = 1.0;
      est.degenerate[i] = true;
      ++degenerate;
    } else if (fine_zero) {
      h = 1.0;
    } else if (coarse_zero) {
      h = 0.0;
    } else {
      h = std::clamp(std::log(v_coarse / v_fine) / log_q2, 0.0, 1.0);
    }
    est.raw[i] = h;
  }
  if (degenerate > 0) {
    est.diagnostics.warn(std::to_string(degenerate) +
                         " subinterval(s) with vanishing quadratic variation; reported as 1");
  }
  return est;
}

HurstEstimate to_lfd(HurstEstimate est) {
  if (est.kind == EstimateKind::lfd) return est;
  est.kind = EstimateKind::lfd;
  for (double& v : est.raw) v = 2.0 - v;
  if (est.smoothed) {
    for (double& v : *est.smoothed) v = 2.0 - v;
  }
  return est;
}

HurstEstimate estimate_lfd(const TimeSeries& x, const EstimatorParams& params) {
  return to_lfd(estimate_hurst(x, params));
}

std::vector<double> loess_linear(const std::vector<double>& x, const std::vector<double>& y,
                                 double span) {
  if (!(span > 0.0) || span > 1.0) throw DomainError("LOESS span must lie in (0, 1]");
  if (x.size() != y.size()) throw DataError("LOESS abscissae and values differ in length");
  const std::size_t n = x.size();
  if (n == 0) throw DataError("nothing to smooth");

  const auto q = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(span * static_cast<double>(n) - 1e-9)), 1, n);
  std::vector<double> out(n);
  std::vector<double> dist(n);
  std::vector<double> scratch(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[j] = std::abs(x[j] - x[i]);
    scratch = dist;
    std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(q - 1),
                     scratch.end());
    const double radius = scratch[q - 1];

    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    for (std::size_t j = 0; j < n; ++j) {
      double w;
      if (radius > 0.0) {
        const double u = dist[j] / radius;
        if (u >= 1.0) continue;
        const double c = 1.0 - u * u * u;
        w = c * c * c;
      } else {
        if (dist[j] > 0.0) continue;
        w = 1.0;
      }
      const double dx = x[j] - x[i];
      s0 += w;
      s1 += w * dx;
      s2 += w * dx * dx;
      t0 += w * y[j];
      t1 += w * dx * y[j];
    }
    const double det = s0 * s2 - s1 * s1;
    if (det > 1e-12 * s0 * s2 && det > 0.0) {
      out[i] = (s2 * t0 - s1 * t1) / det;
    } else {
      out[i] = t0 / s0;
    }
  }
  return out;
}

HurstEstimate smooth_estimates(HurstEstimate est, double span) {
  if (!(span > 0.0) || span > 1.0) throw DomainError("LOESS span must lie in (0, 1]");
  if (est.raw.empty()) throw DataError("cannot smooth an empty estimate");
  std::vector<double> positions(est.raw.size());
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = static_cast<double>(i);
  auto smoothed = loess_linear(positions, est.raw, span);
  for (double& v : smoothed) v = std::clamp(v, est.lower_bound(), est.upper_bound());
  est.smoothed = std::move(smoothed);
  return est;
}

}  // namespace mfrac
