#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mfrac/clustering.hpp"
#include "mfrac/error.hpp"

namespace mfrac {

namespace {

constexpr std::pair<Linkage, std::string_view> kLinkageNames[] = {
    {Linkage::single, "single"},     {Linkage::complete, "complete"},
    {Linkage::average, "average"},   {Linkage::mcquitty, "mcquitty"},
    {Linkage::median, "median"},     {Linkage::centroid, "centroid"},
    {Linkage::ward_d, "ward.D"},     {Linkage::ward_d2, "ward.D2"},
};

double lance_williams(Linkage linkage, double d_ak, double d_bk, double d_ab, double n_a,
                      double n_b, double n_k) {
  switch (linkage) {
    case Linkage::single: return std::min(d_ak, d_bk);
    case Linkage::complete: return std::max(d_ak, d_bk);
    case Linkage::average: return (n_a * d_ak + n_b * d_bk) / (n_a + n_b);
    case Linkage::mcquitty: return 0.5 * (d_ak + d_bk);
    case Linkage::median: return 0.5 * d_ak + 0.5 * d_bk - 0.25 * d_ab;
    case Linkage::centroid: {
      const double s = n_a + n_b;
      return (n_a * d_ak + n_b * d_bk) / s - n_a * n_b * d_ab / (s * s);
    }
    case Linkage::ward_d:
    case Linkage::ward_d2:
      return ((n_a + n_k) * d_ak + (n_b + n_k) * d_bk - n_k * d_ab) / (n_a + n_b + n_k);
  }
  return d_ak;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Applies `count` merges and labels leaves 1.. in order of first appearance.
std::vector<int> labels_after(const MergeTree& tree, std::size_t count) {
  const std::size_t n = tree.leaves;
  // Node ids cover leaves and internal clusters; each internal node points at a leaf.
  std::vector<std::size_t> representative(n + tree.merges.size());
  std::iota(representative.begin(), representative.begin() + static_cast<std::ptrdiff_t>(n), 0);
  UnionFind uf(n);
  for (std::size_t m = 0; m < tree.merges.size(); ++m) {
    const auto& mg = tree.merges[m];
    representative[n + m] = representative[mg.left];
    if (m < count) uf.unite(representative[mg.left], representative[mg.right]);
  }
  std::vector<int> label_of_root(n, 0);
  std::vector<int> labels(n);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = uf.find(i);
    if (label_of_root[r] == 0) label_of_root[r] = ++next;
    labels[i] = label_of_root[r];
  }
  return labels;
}

}  // namespace

Linkage linkage_from_name(std::string_view name) {
  for (const auto& [linkage, text] : kLinkageNames) {
    if (text == name) return linkage;
  }
  throw DomainError("unknown linkage '" + std::string(name) + "'");
}

std::string_view linkage_name(Linkage linkage) {
  for (const auto& [l, text] : kLinkageNames) {
    if (l == linkage) return text;
  }
  return "unknown";
}

std::vector<int> MergeTree::cut_k(std::size_t k) const {
  if (k < 1 || k > leaves) {
    throw DomainError("cluster count k must lie in [1, " + std::to_string(leaves) + "]");
  }
  return labels_after(*this, leaves - k);
}

std::vector<int> MergeTree::cut_h(double h) const {
  std::size_t count = 0;
  while (count < merges.size() && merges[count].height <= h) ++count;
  return labels_after(*this, count);
}

MergeTree hclust(std::span<const double> distances, std::size_t n, Linkage linkage) {
  if (n < 1) throw DataError("hierarchical clustering needs at least one item");
  if (distances.size() != n * n) throw DataError("distance matrix must be n x n");
  const bool squared = linkage == Linkage::ward_d2;

  std::vector<double> d(distances.begin(), distances.end());
  if (squared) {
    for (double& v : d) v *= v;
  }
  std::vector<std::size_t> id(n);  // cluster id occupying each slot
  std::iota(id.begin(), id.end(), 0);
  std::vector<double> size(n, 1.0);
  std::vector<bool> active(n, true);

  MergeTree tree;
  tree.leaves = n;
  tree.merges.reserve(n - 1);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t sa = 0, sb = 0;
    std::pair<std::size_t, std::size_t> best_ids{n * 2, n * 2};
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        const double v = d[i * n + j];
        const std::pair<std::size_t, std::size_t> ids = std::minmax(id[i], id[j]);
        if (v < best || (v == best && ids < best_ids) || best_ids.first == n * 2) {
          best = v;
          best_ids = ids;
          sa = i;
          sb = j;
        }
      }
    }
    const double d_ab = d[sa * n + sb];
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == sa || k == sb) continue;
      const double v = lance_williams(linkage, d[sa * n + k], d[sb * n + k], d_ab, size[sa],
                                      size[sb], size[k]);
      d[sa * n + k] = d[k * n + sa] = v;
    }
    active[sb] = false;
    size[sa] += size[sb];
    tree.merges.push_back({best_ids.first, best_ids.second, squared ? std::sqrt(d_ab) : d_ab});
    id[sa] = n + step;
  }
  return tree;
}

}  // namespace mfrac
