#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mfrac_app/requests.hpp"

namespace mfrac::app {

using Json = nlohmann::ordered_json;

/// Schema violation at a JSON path such as `/series/x/3`.
class SchemaError : public UsageError {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : UsageError(path + ": " + message), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Rejects keys of `obj` outside `allowed`.
void expect_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed);

Json series_json(const TimeSeries& x);
TimeSeries series_from_json(const Json& j, const std::string& path);

Json diagnostics_json(const Diagnostics& d);

SimulateRequest simulate_request_from_json(const Json& j);
/// Request fields echoed back: kind, seed, J for ghbmp, points.
Json simulate_meta_json(const SimulateRequest& req);

EstimateRequest estimate_request_from_json(const Json& j);
Json estimate_json(const EstimateResult& r, const EstimateRequest& req);

CovarianceRequest covariance_request_from_json(const Json& j);
Json matrix_json(const CovMatrix& c);

ClusterRequest cluster_request_from_json(const Json& j);
FamilySimulation family_simulation_from_json(const Json& j, const std::string& path);
Json cluster_json(const ClusterResult& r);

/// Named statistics over a series (sojourn, exc_area, cross_count, cross_rate,
/// cross_mean, streaks, extremum) and RSI over prices.
struct StatsRequest {
  std::vector<std::string> statistics;
  LevelQuery query;
  std::size_t period = 14;
  ExtremumKind extremum = ExtremumKind::max;
};

StatsRequest stats_request_from_json(const Json& j);
/// `series` may be null when only RSI over `prices` is requested.
Json run_stats(const StatsRequest& req, const TimeSeries* series, std::span<const double> prices);

/// Every statistic name run_stats understands.
const std::vector<std::string>& stat_names();

}  // namespace mfrac::app
