#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mfrac {

/// Distance between two equal-length feature vectors.
class DistanceMethod {
 public:
  using Function = std::function<double(std::span<const double>, std::span<const double>)>;

  static DistanceMethod euclidean();
  static DistanceMethod manhattan();
  /// DomainError unless p >= 1.
  static DistanceMethod minkowski(double p);
  static DistanceMethod supremum();
  /// sum |u - v| / (|u| + |v|); terms with 0/0 contribute 0.
  static DistanceMethod canberra();
  /// Any user-supplied metric.
  static DistanceMethod custom(std::string name, Function f);

  /// "euclidean", "manhattan", "minkowski" (uses p), "supremum" / "maximum", "canberra".
  /// DomainError for anything else.
  static DistanceMethod from_name(std::string_view name, double p = 2.0);

  /// DataError on length mismatch.
  double operator()(std::span<const double> u, std::span<const double> v) const;

  const std::string& name() const noexcept { return name_; }
  double p() const noexcept { return p_; }

 private:
  DistanceMethod(std::string name, double p, Function f);

  std::string name_;
  double p_;
  Function fn_;
};

double pairwise_distance(std::span<const double> u, std::span<const double> v,
                         const DistanceMethod& method);

/// Full symmetric n x n distance matrix (row-major) over the rows.
std::vector<double> distance_matrix(const std::vector<std::vector<double>>& rows,
                                    const DistanceMethod& method);

}  // namespace mfrac
