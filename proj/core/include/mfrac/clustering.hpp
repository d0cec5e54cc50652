#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mfrac/distance.hpp"
#include "mfrac/estimation.hpp"
#include "mfrac/rng.hpp"
#include "mfrac/series.hpp"

namespace mfrac {

// ---------------------------------------------------------------------------
// Hierarchical clustering

enum class Linkage { single, complete, average, mcquitty, median, centroid, ward_d, ward_d2 };

/// Accepts "single", "complete", "average", "mcquitty", "median", "centroid",
/// "ward.D", "ward.D2". DomainError otherwise.
Linkage linkage_from_name(std::string_view name);
std::string_view linkage_name(Linkage linkage);

/// One agglomeration step. Leaves are 0..n-1; merge m creates cluster n + m.
struct Merge {
  std::size_t left;   ///< smaller cluster id
  std::size_t right;  ///< larger cluster id
  double height;

  friend bool operator==(const Merge&, const Merge&) = default;
};

struct MergeTree {
  std::size_t leaves = 0;
  std::vector<Merge> merges;

  /// Labels 1..k per leaf after applying the first n - k merges, numbered in
  /// order of first appearance. DomainError unless 1 <= k <= n.
  std::vector<int> cut_k(std::size_t k) const;
  /// Applies merges until the first one higher than h.
  std::vector<int> cut_h(double h) const;
};

/// Lance-Williams agglomeration over a full n x n distance matrix (row-major).
/// Ties are broken by the lowest (smaller id, larger id) pair. ward.D2 works on
/// squared distances and reports square-rooted heights.
MergeTree hclust(std::span<const double> distances, std::size_t n, Linkage linkage);

// ---------------------------------------------------------------------------
// k-means

struct KmeansResult {
  std::vector<int> cluster;  ///< 1..k per row
  std::vector<std::vector<double>> centers;
  std::vector<std::size_t> sizes;
  double wcss = 0.0;
  /// Within-cluster sum of squares after each centre update of the kept run.
  std::vector<double> wcss_history;
  std::size_t iterations = 0;
  bool converged = false;
  std::size_t best_start = 0;
};

/// Lloyd iterations from `nstart` seeded starts (k distinct rows as centres);
/// keeps the run with the smallest WCSS. An empty cluster takes the point
/// farthest from its centre among clusters with more than one member.
/// DomainError for k == 0, k > rows, iter_max == 0 or nstart == 0.
KmeansResult kmeans(const std::vector<std::vector<double>>& rows, std::size_t k,
                    std::size_t iter_max, std::size_t nstart, SimSeed seed);

// ---------------------------------------------------------------------------
// Clustering of realizations by their Hurst estimates

struct FeatureMatrix {
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> row_ids;

  std::size_t size() const noexcept { return rows.size(); }
};

/// Raw and smoothed Hurst estimates of each realization as feature rows.
/// Errors from a realization are rethrown with its index.
std::pair<FeatureMatrix, FeatureMatrix> hurst_features(std::span<const TimeSeries> realizations,
                                                       const EstimatorParams& params,
                                                       double span = 0.75);

struct ClusterResult {
  std::vector<int> cluster;
  std::vector<std::size_t> cluster_sizes;
  std::vector<std::vector<double>> centers;
  std::vector<double> distance_from_center;
  FeatureMatrix smoothed_hurst_estimates;
  FeatureMatrix raw_hurst_estimates;
  std::vector<std::pair<std::string, std::string>> call;
  std::optional<MergeTree> tree;  ///< hierarchical clustering only
  std::optional<double> wcss;     ///< k-means only
};

struct HclustOptions {
  std::optional<std::size_t> k;
  std::optional<double> h;
  DistanceMethod distance = DistanceMethod::euclidean();
  Linkage linkage = Linkage::complete;
  EstimatorParams params;
  double span = 0.75;
};

struct KmeansOptions {
  std::size_t k = 2;
  std::size_t iter_max = 10;
  std::size_t nstart = 1;
  SimSeed seed;
  EstimatorParams params;
  double span = 0.75;
};

/// Estimates and smooths each realization, then clusters the smoothed rows.
/// k wins when both k and h are given. Distances to centres use the
/// clustering metric. DataError for fewer than two realizations; DomainError
/// when neither k nor h is given.
ClusterResult hclust_hurst(std::span<const TimeSeries> realizations, const HclustOptions& opts);
ClusterResult hclust_features(FeatureMatrix raw, FeatureMatrix smoothed, const HclustOptions& opts);

/// k-means on the smoothed rows; distances to centres are euclidean.
ClusterResult kmeans_hurst(std::span<const TimeSeries> realizations, const KmeansOptions& opts);
ClusterResult kmeans_features(FeatureMatrix raw, FeatureMatrix smoothed, const KmeansOptions& opts);

}  // namespace mfrac
