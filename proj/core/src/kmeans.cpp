#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "mfrac/clustering.hpp"
#include "mfrac/error.hpp"

namespace mfrac {

namespace {

using Rows = std::vector<std::vector<double>>;

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

std::vector<std::size_t> assign(const Rows& rows, const Rows& centers) {
  std::vector<std::size_t> labels(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const double d = squared_distance(rows[i], centers[c]);
      if (d < best) {
        best = d;
        arg = c;
      }
    }
    labels[i] = arg;
  }
  return labels;
}

std::vector<std::size_t> cluster_sizes(const std::vector<std::size_t>& labels, std::size_t k) {
  std::vector<std::size_t> sizes(k, 0);
  for (auto l : labels) ++sizes[l];
  return sizes;
}

Rows means(const Rows& rows, const std::vector<std::size_t>& labels, std::size_t k) {
  const std::size_t dim = rows.front().size();
  Rows centers(k, std::vector<double>(dim, 0.0));
  const auto sizes = cluster_sizes(labels, k);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < dim; ++c) centers[labels[i]][c] += rows[i][c];
  }
  for (std::size_t j = 0; j < k; ++j) {
    for (double& v : centers[j]) v /= static_cast<double>(sizes[j]);
  }
  return centers;
}

// Gives every empty cluster the point farthest from its current centre,
// drawn from clusters that keep at least one member.
void repair_empty(const Rows& rows, std::vector<std::size_t>& labels, Rows& centers) {
  const std::size_t k = centers.size();
  auto sizes = cluster_sizes(labels, k);
  for (std::size_t c = 0; c < k; ++c) {
    if (sizes[c] > 0) continue;
    double far = -1.0;
    std::size_t pick = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (sizes[labels[i]] < 2) continue;
      const double d = squared_distance(rows[i], centers[labels[i]]);
      if (d > far) {
        far = d;
        pick = i;
      }
    }
    --sizes[labels[pick]];
    labels[pick] = c;
    sizes[c] = 1;
    centers[c] = rows[pick];
  }
}

double wcss_of(const Rows& rows, const std::vector<std::size_t>& labels, const Rows& centers) {
  double s = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) s += squared_distance(rows[i], centers[labels[i]]);
  return s;
}

struct Run {
  std::vector<std::size_t> labels;
  Rows centers;
  double wcss;
  std::vector<double> history;
  std::size_t iterations;
  bool converged;
};

Run lloyd(const Rows& rows, Rows centers, std::size_t iter_max) {
  const std::size_t k = centers.size();
  Run run{assign(rows, centers), {}, 0.0, {}, 0, false};
  for (std::size_t it = 0; it < iter_max; ++it) {
    repair_empty(rows, run.labels, centers);
    centers = means(rows, run.labels, k);
    run.history.push_back(wcss_of(rows, run.labels, centers));
    run.iterations = it + 1;
    auto next = assign(rows, centers);
    if (next == run.labels) {
      run.converged = true;
      break;
    }
    run.labels = std::move(next);
  }
  if (!run.converged) {
    repair_empty(rows, run.labels, centers);
    centers = means(rows, run.labels, k);
  }
  run.wcss = wcss_of(rows, run.labels, centers);
  run.centers = std::move(centers);
  return run;
}

}  // namespace

KmeansResult kmeans(const Rows& rows, std::size_t k, std::size_t iter_max, std::size_t nstart,
                    SimSeed seed) {
  const std::size_t n = rows.size();
  if (k == 0) throw DomainError("k-means needs k >= 1");
  if (k > n) {
    throw DomainError("k-means needs k <= number of items (" + std::to_string(n) + ")");
  }
  if (iter_max == 0) throw DomainError("k-means needs iter_max >= 1");
  if (nstart == 0) throw DomainError("k-means needs nstart >= 1");
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw DataError("k-means rows differ in length");
  }

  const CounterRng rng(seed, Stream::kmeans_init);
  std::optional<Run> best;
  std::size_t best_start = 0;
  std::vector<std::size_t> order(n);
  for (std::size_t s = 0; s < nstart; ++s) {
    // Partial Fisher-Yates: the first k entries are k distinct rows.
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + rng.below(s * n + i, n - i);
      std::swap(order[i], order[j]);
    }
    Rows centers(k);
    for (std::size_t i = 0; i < k; ++i) centers[i] = rows[order[i]];
    Run run = lloyd(rows, std::move(centers), iter_max);
    if (!best || run.wcss < best->wcss) {
      best = std::move(run);
      best_start = s;
    }
  }

  KmeansResult result;
  result.cluster.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.cluster[i] = static_cast<int>(best->labels[i]) + 1;
  result.sizes = cluster_sizes(best->labels, k);
  result.centers = std::move(best->centers);
  result.wcss = best->wcss;
  result.wcss_history = std::move(best->history);
  result.iterations = best->iterations;
  result.converged = best->converged;
  result.best_start = best_start;
  return result;
}

}  // namespace mfrac
