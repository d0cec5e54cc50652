#include "mfrac/distance.hpp"

#include <algorithm>
#include <cmath>

#include "mfrac/error.hpp"

namespace mfrac {

DistanceMethod::DistanceMethod(std::string name, double p, Function f)
    : name_(std::move(name)), p_(p), fn_(std::move(f)) {}

DistanceMethod DistanceMethod::euclidean() {
  return {"euclidean", 2.0, [](std::span<const double> u, std::span<const double> v) {
            double s = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] - v[i]) * (u[i] - v[i]);
            return std::sqrt(s);
          }};
}

DistanceMethod DistanceMethod::manhattan() {
  return {"manhattan", 1.0, [](std::span<const double> u, std::span<const double> v) {
            double s = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) s += std::abs(u[i] - v[i]);
            return s;
          }};
}

DistanceMethod DistanceMethod::minkowski(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("minkowski distance needs p >= 1");
  return {"minkowski", p, [p](std::span<const double> u, std::span<const double> v) {
            double s = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) s += std::pow(std::abs(u[i] - v[i]), p);
            return std::pow(s, 1.0 / p);
          }};
}

DistanceMethod DistanceMethod::supremum() {
  return {"supremum", 0.0, [](std::span<const double> u, std::span<const double> v) {
            double s = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) s = std::max(s, std::abs(u[i] - v[i]));
            return s;
          }};
}

DistanceMethod DistanceMethod::canberra() {
  return {"canberra", 0.0, [](std::span<const double> u, std::span<const double> v) {
            double s = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
              const double den = std::abs(u[i]) + std::abs(v[i]);
              if (den > 0.0) s += std::abs(u[i] - v[i]) / den;
            }
            return s;
          }};
}

DistanceMethod DistanceMethod::custom(std::string name, Function f) {
  if (!f) throw DomainError("custom distance needs a function");
  return {std::move(name), 0.0, std::move(f)};
}

DistanceMethod DistanceMethod::from_name(std::string_view name, double p) {
  if (name == "euclidean") return euclidean();
  if (name == "manhattan") return manhattan();
  if (name == "minkowski") return minkowski(p);
  if (name == "supremum" || name == "maximum") return supremum();
  if (name == "canberra") return canberra();
  throw DomainError("unknown distance method '" + std::string(name) + "'");
}

double DistanceMethod::operator()(std::span<const double> u, std::span<const double> v) const {
  if (u.size() != v.size()) throw DataError("distance between vectors of different lengths");
  return fn_(u, v);
}

double pairwise_distance(std::span<const double> u, std::span<const double> v,
                         const DistanceMethod& method) {
  return method(u, v);
}

std::vector<double> distance_matrix(const std::vector<std::vector<double>>& rows,
                                    const DistanceMethod& method) {
  const std::size_t n = rows.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = d[j * n + i] = method(rows[i], rows[j]);
    }
  }
  return d;
}

}  // namespace mfrac
