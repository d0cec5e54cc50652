#include "mfrac/clustering.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "mfrac/error.hpp"
#include "mfrac/parallel.hpp"

namespace mfrac {

namespace {

std::string format_number(double v) {
  std::string s = std::to_string(v);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

void append_estimator_call(std::vector<std::pair<std::string, std::string>>& call,
                           const EstimatorParams& p, double span) {
  call.emplace_back("N", std::to_string(p.N));
  call.emplace_back("Q", std::to_string(p.Q));
  call.emplace_back("L", std::to_string(p.L));
  call.emplace_back("span", format_number(span));
}

// Sizes, centres (coordinate-wise means) and member-to-centre distances.
void summarize(ClusterResult& r, const std::vector<std::vector<double>>& rows,
               const DistanceMethod& metric) {
  int k = 0;
  for (int c : r.cluster) k = std::max(k, c);
  const std::size_t dim = rows.empty() ? 0 : rows.front().size();
  r.cluster_sizes.assign(static_cast<std::size_t>(k), 0);
  r.centers.assign(static_cast<std::size_t>(k), std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto c = static_cast<std::size_t>(r.cluster[i] - 1);
    ++r.cluster_sizes[c];
    for (std::size_t d = 0; d < dim; ++d) r.centers[c][d] += rows[i][d];
  }
  for (std::size_t c = 0; c < r.centers.size(); ++c) {
    for (double& v : r.centers[c]) v /= static_cast<double>(r.cluster_sizes[c]);
  }
  r.distance_from_center.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    r.distance_from_center[i] =
        metric(rows[i], r.centers[static_cast<std::size_t>(r.cluster[i] - 1)]);
  }
}

void check_features(const FeatureMatrix& raw, const FeatureMatrix& smoothed) {
  if (smoothed.size() < 2) throw DataError("clustering needs at least two realizations");
  if (raw.size() != smoothed.size()) throw DataError("raw and smoothed feature rows differ");
  for (const auto& r : smoothed.rows) {
    if (r.size() != smoothed.rows.front().size()) {
      throw DataError("feature rows differ in length");
    }
  }
}

}  // namespace

std::pair<FeatureMatrix, FeatureMatrix> hurst_features(std::span<const TimeSeries> realizations,
                                                       const EstimatorParams& params,
                                                       double span) {
  const std::size_t n = realizations.size();
  std::vector<HurstEstimate> estimates(n);
  std::vector<std::exception_ptr> failures(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        estimates[i] = smooth_estimates(estimate_hurst(realizations[i], params), span);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    if (!failures[i]) continue;
    const std::string where = "realization " + std::to_string(i) + ": ";
    try {
      std::rethrow_exception(failures[i]);
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    } catch (const DomainError& e) {
      throw DomainError(where + e.what());
    }
  }
  FeatureMatrix raw, smoothed;
  for (std::size_t i = 0; i < n; ++i) {
    raw.rows.push_back(estimates[i].raw);
    raw.row_ids.push_back(i);
    smoothed.rows.push_back(*estimates[i].smoothed);
    smoothed.row_ids.push_back(i);
  }
  return {std::move(raw), std::move(smoothed)};
}

ClusterResult hclust_features(FeatureMatrix raw, FeatureMatrix smoothed,
                              const HclustOptions& opts) {
  check_features(raw, smoothed);
  if (!opts.k && !opts.h) throw DomainError("hierarchical clustering needs k or h");
  const std::size_t n = smoothed.size();
  const auto d = distance_matrix(smoothed.rows, opts.distance);
  ClusterResult r;
  r.tree = hclust(d, n, opts.linkage);
  r.cluster = opts.k ? r.tree->cut_k(*opts.k) : r.tree->cut_h(*opts.h);
  summarize(r, smoothed.rows, opts.distance);

  r.call.emplace_back("method", "hclust");
  if (opts.k) {
    r.call.emplace_back("k", std::to_string(*opts.k));
  } else {
    r.call.emplace_back("h", format_number(*opts.h));
  }
  r.call.emplace_back("dist_method", opts.distance.name());
  r.call.emplace_back("linkage", std::string(linkage_name(opts.linkage)));
  append_estimator_call(r.call, opts.params, opts.span);
  r.raw_hurst_estimates = std::move(raw);
  r.smoothed_hurst_estimates = std::move(smoothed);
  return r;
}

ClusterResult hclust_hurst(std::span<const TimeSeries> realizations, const HclustOptions& opts) {
  if (realizations.size() < 2) throw DataError("clustering needs at least two realizations");
  if (!opts.k && !opts.h) throw DomainError("hierarchical clustering needs k or h");
  auto [raw, smoothed] = hurst_features(realizations, opts.params, opts.span);
  return hclust_features(std::move(raw), std::move(smoothed), opts);
}

ClusterResult kmeans_features(FeatureMatrix raw, FeatureMatrix smoothed,
                              const KmeansOptions& opts) {
  check_features(raw, smoothed);
  const auto km = kmeans(smoothed.rows, opts.k, opts.iter_max, opts.nstart, opts.seed);
  ClusterResult r;
  r.cluster = km.cluster;
  r.wcss = km.wcss;
  summarize(r, smoothed.rows, DistanceMethod::euclidean());

  r.call.emplace_back("method", "kmeans");
  r.call.emplace_back("k", std::to_string(opts.k));
  r.call.emplace_back("iter_max", std::to_string(opts.iter_max));
  r.call.emplace_back("nstart", std::to_string(opts.nstart));
  r.call.emplace_back("seed", std::to_string(opts.seed.value));
  append_estimator_call(r.call, opts.params, opts.span);
  r.raw_hurst_estimates = std::move(raw);
  r.smoothed_hurst_estimates = std::move(smoothed);
  return r;
}

ClusterResult kmeans_hurst(std::span<const TimeSeries> realizations, const KmeansOptions& opts) {
  if (realizations.size() < 2) throw DataError("clustering needs at least two realizations");
  if (opts.k == 0 || opts.k > realizations.size()) {
    throw DomainError("k-means needs 1 <= k <= number of realizations");
  }
  auto [raw, smoothed] = hurst_features(realizations, opts.params, opts.span);
  return kmeans_features(std::move(raw), std::move(smoothed), opts);
}

}  // namespace mfrac
