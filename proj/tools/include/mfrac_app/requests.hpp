#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfrac/clustering.hpp"
#include "mfrac/covariance.hpp"
#include "mfrac/error.hpp"
#include "mfrac/estimation.hpp"
#include "mfrac/geom_stats.hpp"
#include "mfrac/hurst_spec.hpp"
#include "mfrac/rng.hpp"
#include "mfrac/series.hpp"
#include "mfrac/simulate.hpp"

namespace mfrac::app {

/// Inconsistent flags or request fields (exit code 2 / HTTP 400).
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class ProcessKind { ghbmp, bm, bbridge, fbm, fbbridge, fgn };

ProcessKind process_kind_from_name(std::string_view name);
std::string_view process_kind_name(ProcessKind kind);
/// ghbmp needs a Hurst function; fbm, fbbridge and fgn a constant; bm and bbridge none.
bool needs_hurst(ProcessKind kind);

/// At most one of the three forms is set.
struct HurstInput {
  std::optional<std::string> expr;
  std::optional<double> constant;
  std::optional<std::array<double, 3>> ramp;  // low, high, jump

  bool empty() const { return !expr && !constant && !ramp; }
};

/// Level-dependent for ramps, otherwise level-independent. UsageError when
/// no form or more than one is given; ParseError for a bad expression.
HurstSpec resolve_hurst(const HurstInput& in);
/// Constant forms only: an expression must not mention t.
double resolve_constant_hurst(const HurstInput& in);

struct SimulateRequest {
  ProcessKind kind = ProcessKind::ghbmp;
  HurstInput hurst;
  std::size_t points = 1025;
  double t_start = 0.0;
  double t_end = 1.0;
  double terminal = 0.0;
  int truncation = kDefaultTruncation;
  SimSeed seed;
};

/// Rough count of kernel evaluations, used for request caps.
double simulation_cost(const SimulateRequest& req);
TimeSeries run_simulate(const SimulateRequest& req, Diagnostics* diag = nullptr);

struct EstimateRequest {
  EstimatorParams params;
  double span = 0.75;
};

struct EstimateResult {
  HurstEstimate hurst;  // smoothed
  HurstEstimate lfd;
};

EstimateResult run_estimate(const TimeSeries& x, const EstimateRequest& req);

enum class CovMode { theoretical, empirical };

struct CovarianceRequest {
  CovMode mode = CovMode::theoretical;
  HurstInput hurst;
  std::size_t points = 101;
  int truncation = kDefaultCovTruncation;
  std::optional<double> theta;
  std::size_t realizations = 200;
  int sim_truncation = kDefaultCovTruncation;
  SimSeed seed;
};

/// Uniform grid on [0, 1]. Empirical mode simulates `realizations` GHBMP paths
/// with seeds derive_seed(seed, m) unless `provided` is non-empty.
CovMatrix run_covariance(const CovarianceRequest& req,
                         std::span<const TimeSeries> provided = {});

struct ClusterRequest {
  bool kmeans = false;
  std::optional<std::size_t> k;
  std::optional<double> h;
  DistanceMethod distance = DistanceMethod::euclidean();
  Linkage linkage = Linkage::complete;
  std::size_t iter_max = 10;
  std::size_t nstart = 1;
  SimSeed seed;
  EstimatorParams params;
  double span = 0.75;
};

ClusterResult run_cluster(std::span<const TimeSeries> realizations, const ClusterRequest& req);

/// `per_family` GHBMP paths for each Hurst family on [0, 1] with `points`
/// samples. Path r of family f uses derive_seed(seed, f * per_family + r).
struct FamilySimulation {
  std::vector<HurstInput> families;
  std::size_t per_family = 5;
  std::size_t points = 2049;
  int truncation = kDefaultTruncation;
  SimSeed seed;
};

struct LabelledRealizations {
  std::vector<TimeSeries> series;
  std::vector<int> family;  // 1-based
};

LabelledRealizations simulate_families(const FamilySimulation& sim);

}  // namespace mfrac::app
