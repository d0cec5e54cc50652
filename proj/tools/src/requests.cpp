#include "mfrac_app/requests.hpp"

#include <cmath>

#include "mfrac/hurst_expr.hpp"

namespace mfrac::app {

namespace {

constexpr std::pair<ProcessKind, std::string_view> kKindNames[] = {
    {ProcessKind::ghbmp, "ghbmp"}, {ProcessKind::bm, "bm"},
    {ProcessKind::bbridge, "bbridge"}, {ProcessKind::fbm, "fbm"},
    {ProcessKind::fbbridge, "fbbridge"}, {ProcessKind::fgn, "fgn"},
};

bool mentions_t(const expr::Node& n) {
  if (n.kind == expr::NodeKind::variable) return true;
  for (const auto& c : n.children) {
    if (mentions_t(*c)) return true;
  }
  return false;
}

int forms_given(const HurstInput& in) {
  return static_cast<int>(in.expr.has_value()) + static_cast<int>(in.constant.has_value()) +
         static_cast<int>(in.ramp.has_value());
}

}  // namespace

ProcessKind process_kind_from_name(std::string_view name) {
  for (const auto& [kind, text] : kKindNames) {
    if (text == name) return kind;
  }
  throw UsageError("unknown process kind '" + std::string(name) +
                   "' (expected ghbmp, bm, bbridge, fbm, fbbridge or fgn)");
}

std::string_view process_kind_name(ProcessKind kind) {
  for (const auto& [k, text] : kKindNames) {
    if (k == kind) return text;
  }
  return "unknown";
}

bool needs_hurst(ProcessKind kind) {
  return kind != ProcessKind::bm && kind != ProcessKind::bbridge;
}

HurstSpec resolve_hurst(const HurstInput& in) {
  if (forms_given(in) != 1) {
    throw UsageError("give exactly one Hurst function: an expression, a constant or a ramp");
  }
  if (in.constant) {
    if (!(*in.constant > 0.0 && *in.constant < 1.0)) {
      throw DomainError("constant Hurst exponent must lie in (0, 1)");
    }
    return HurstSpec::constant(*in.constant);
  }
  if (in.ramp) {
    const auto [low, high, jump] = *in.ramp;
    return piecewise_ramp_levels(low, high, jump);
  }
  return to_hurst_spec(HurstExpr::parse(*in.expr));
}

double resolve_constant_hurst(const HurstInput& in) {
  if (forms_given(in) != 1 || in.ramp) {
    throw UsageError("this process needs a constant Hurst exponent");
  }
  double h;
  if (in.constant) {
    h = *in.constant;
  } else {
    const auto e = HurstExpr::parse(*in.expr);
    if (mentions_t(e.root())) {
      throw UsageError("this process needs a constant Hurst exponent; '" + *in.expr +
                       "' depends on t");
    }
    h = e.evaluate(0.0);
  }
  if (!(h > 0.0 && h < 1.0)) throw DomainError("Hurst exponent must lie in (0, 1)");
  return h;
}

double simulation_cost(const SimulateRequest& req) {
  const double n = static_cast<double>(req.points);
  if (req.kind != ProcessKind::ghbmp) return n * std::log2(std::max(n, 2.0));
  return n * std::ldexp(1.0, std::max(req.truncation, 0) + 1);
}

TimeSeries run_simulate(const SimulateRequest& req, Diagnostics* diag) {
  if (needs_hurst(req.kind) && req.hurst.empty()) {
    throw UsageError(std::string(process_kind_name(req.kind)) + " needs a Hurst exponent");
  }
  if (!needs_hurst(req.kind) && !req.hurst.empty()) {
    throw UsageError(std::string(process_kind_name(req.kind)) + " takes no Hurst exponent");
  }
  if (req.points < 2) throw DomainError("a grid needs at least 2 points");
  const auto grid = GridSpec::uniform(req.t_start, req.t_end, req.points);
  switch (req.kind) {
    case ProcessKind::ghbmp:
      return simulate_ghbmp(grid, resolve_hurst(req.hurst), req.truncation, req.seed, diag);
    case ProcessKind::bm: return simulate_bm(grid, req.seed);
    case ProcessKind::bbridge: return simulate_bbridge(grid, req.terminal, req.seed);
    case ProcessKind::fbm:
      return simulate_fbm(grid, resolve_constant_hurst(req.hurst), req.seed);
    case ProcessKind::fbbridge:
      return simulate_fbbridge(grid, resolve_constant_hurst(req.hurst), req.terminal, req.seed);
    case ProcessKind::fgn: {
      auto v = simulate_fgn(req.points, resolve_constant_hurst(req.hurst), req.seed);
      return TimeSeries(grid.points(), std::move(v));
    }
  }
  throw UsageError("unknown process kind");
}

EstimateResult run_estimate(const TimeSeries& x, const EstimateRequest& req) {
  EstimateResult r;
  r.hurst = smooth_estimates(estimate_hurst(x, req.params), req.span);
  r.lfd = to_lfd(r.hurst);
  return r;
}

CovMatrix run_covariance(const CovarianceRequest& req, std::span<const TimeSeries> provided) {
  if (req.mode == CovMode::empirical && !provided.empty()) return est_cov(provided, req.theta);
  if (req.points < 2) throw DomainError("a grid needs at least 2 points");
  const auto grid = GridSpec::uniform(0.0, 1.0, req.points);
  const HurstSpec hurst = resolve_hurst(req.hurst);
  if (req.mode == CovMode::theoretical) {
    return cov_ghbmp(grid.points(), hurst, req.truncation, req.theta);
  }
  if (req.realizations == 0) throw DomainError("empirical covariance needs at least 1 realization");
  std::vector<TimeSeries> paths;
  paths.reserve(req.realizations);
  for (std::size_t m = 0; m < req.realizations; ++m) {
    paths.push_back(simulate_ghbmp(grid, hurst, req.sim_truncation, derive_seed(req.seed, m)));
  }
  return est_cov(paths, req.theta);
}

ClusterResult run_cluster(std::span<const TimeSeries> realizations, const ClusterRequest& req) {
  if (req.kmeans) {
    if (!req.k) throw UsageError("k-means needs k");
    KmeansOptions o;
    o.k = *req.k;
    o.iter_max = req.iter_max;
    o.nstart = req.nstart;
    o.seed = req.seed;
    o.params = req.params;
    o.span = req.span;
    return kmeans_hurst(realizations, o);
  }
  if (!req.k && !req.h) throw UsageError("hierarchical clustering needs k or h");
  HclustOptions o;
  o.k = req.k;
  o.h = req.h;
  o.distance = req.distance;
  o.linkage = req.linkage;
  o.params = req.params;
  o.span = req.span;
  return hclust_hurst(realizations, o);
}

LabelledRealizations simulate_families(const FamilySimulation& sim) {
  if (sim.families.empty() || sim.per_family == 0) {
    throw UsageError("family simulation needs at least one family and one path per family");
  }
  std::vector<HurstSpec> specs;
  for (const auto& f : sim.families) specs.push_back(resolve_hurst(f));
  const auto grid = GridSpec::uniform(0.0, 1.0, sim.points);
  LabelledRealizations out;
  for (std::size_t f = 0; f < specs.size(); ++f) {
    for (std::size_t r = 0; r < sim.per_family; ++r) {
      out.series.push_back(simulate_ghbmp(grid, specs[f], sim.truncation,
                                          derive_seed(sim.seed, f * sim.per_family + r)));
      out.family.push_back(static_cast<int>(f) + 1);
    }
  }
  return out;
}

}  // namespace mfrac::app
