#include "mfrac_app/json_io.hpp"

#include <algorithm>
#include <cmath>

namespace mfrac::app {

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }

const Json* field(const Json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double as_number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(path, "number is not finite");
  return d;
}

std::uint64_t as_uint(const Json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw SchemaError(path, "expected a non-negative integer");
}

std::string as_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const Json& v, const std::string& path) {
  if (!v.is_boolean()) throw SchemaError(path, "expected true or false");
  return v.get<bool>();
}

std::vector<double> as_numbers(const Json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_number(v[i], child(path, std::to_string(i))));
  }
  return out;
}

template <typename T, typename Read>
void read_opt(const Json& obj, const char* key, const std::string& path, T& target, Read read) {
  if (const Json* v = field(obj, key)) target = read(*v, child(path, key));
}

void read_double(const Json& obj, const char* key, const std::string& path, double& target) {
  read_opt(obj, key, path, target, as_number);
}

void read_size(const Json& obj, const char* key, const std::string& path, std::size_t& target) {
  read_opt(obj, key, path, target,
           [](const Json& v, const std::string& p) { return static_cast<std::size_t>(as_uint(v, p)); });
}

void read_int(const Json& obj, const char* key, const std::string& path, int& target) {
  read_opt(obj, key, path, target, [](const Json& v, const std::string& p) {
    const auto u = as_uint(v, p);
    if (u > 64) throw SchemaError(p, "value too large");
    return static_cast<int>(u);
  });
}

void read_seed(const Json& obj, const std::string& path, SimSeed& seed) {
  if (const Json* v = field(obj, "seed")) seed = SimSeed{as_uint(*v, child(path, "seed"))};
}

void expect_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected a JSON object");
}

HurstInput hurst_input_from_json(const Json& j, const std::string& path) {
  HurstInput in;
  if (j.is_string()) {
    in.expr = j.get<std::string>();
    return in;
  }
  expect_object(j, path);
  read_opt(j, "hurst_expr", path, in.expr, as_string);
  if (const Json* v = field(j, "hurst")) in.constant = as_number(*v, child(path, "hurst"));
  if (const Json* v = field(j, "hurst_ramp")) {
    const std::string p = child(path, "hurst_ramp");
    expect_object(*v, p);
    expect_keys(*v, p, {"low", "high", "jump"});
    std::array<double, 3> r{0.2, 0.8, 0.5};
    read_double(*v, "low", p, r[0]);
    read_double(*v, "high", p, r[1]);
    read_double(*v, "jump", p, r[2]);
    in.ramp = r;
  }
  const int forms = static_cast<int>(in.expr.has_value()) +
                    static_cast<int>(in.constant.has_value()) + static_cast<int>(in.ramp.has_value());
  if (forms > 1) {
    throw SchemaError(path.empty() ? "/" : path,
                      "give only one of hurst_expr, hurst and hurst_ramp");
  }
  return in;
}

void read_estimator(const Json& j, const std::string& path, EstimatorParams& p, double& span) {
  read_size(j, "N", path, p.N);
  read_size(j, "Q", path, p.Q);
  read_size(j, "L", path, p.L);
  read_opt(j, "upsample", path, p.upsample, as_bool);
  read_double(j, "span", path, span);
}

Json rows_json(const FeatureMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.rows) rows.push_back(r);
  return rows;
}

}  // namespace

void expect_keys(const Json& obj, const std::string& path,
                 std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) throw SchemaError(child(path, key), "unknown field");
  }
}

Json series_json(const TimeSeries& x) {
  Json j;
  j["t"] = std::vector<double>(x.times().begin(), x.times().end());
  j["x"] = std::vector<double>(x.values().begin(), x.values().end());
  return j;
}

TimeSeries series_from_json(const Json& j, const std::string& path) {
  expect_object(j, path);
  expect_keys(j, path, {"t", "x"});
  const Json* t = field(j, "t");
  const Json* x = field(j, "x");
  if (!t || !x) throw SchemaError(path, "a series needs arrays t and x");
  auto times = as_numbers(*t, child(path, "t"));
  auto values = as_numbers(*x, child(path, "x"));
  if (times.size() != values.size()) throw SchemaError(path, "t and x differ in length");
  if (times.size() < 2) throw SchemaError(path, "a series needs at least two samples");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw SchemaError(child(child(path, "t"), std::to_string(i)),
                        "times must be strictly increasing");
    }
  }
  return TimeSeries(std::move(times), std::move(values));
}

Json diagnostics_json(const Diagnostics& d) { return Json(d.warnings); }

SimulateRequest simulate_request_from_json(const Json& j) {
  const std::string path;
  expect_object(j, path);
  expect_keys(j, path, {"kind", "hurst_expr", "hurst", "hurst_ramp", "points", "t_start", "t_end",
                        "terminal", "trunc_J", "seed", "timing"});
  SimulateRequest r;
  if (const Json* v = field(j, "kind")) r.kind = process_kind_from_name(as_string(*v, "/kind"));
  r.hurst = hurst_input_from_json(j, path);
  read_size(j, "points", path, r.points);
  read_double(j, "t_start", path, r.t_start);
  read_double(j, "t_end", path, r.t_end);
  read_double(j, "terminal", path, r.terminal);
  read_int(j, "trunc_J", path, r.truncation);
  read_seed(j, path, r.seed);
  return r;
}

Json simulate_meta_json(const SimulateRequest& req) {
  Json m;
  m["kind"] = process_kind_name(req.kind);
  m["seed"] = req.seed.value;
  if (req.kind == ProcessKind::ghbmp) m["J"] = req.truncation;
  m["points"] = req.points;
  return m;
}

EstimateRequest estimate_request_from_json(const Json& j) {
  expect_object(j, "");
  expect_keys(j, "", {"series", "simulate", "N", "Q", "L", "span", "upsample", "timing"});
  EstimateRequest r;
  read_estimator(j, "", r.params, r.span);
  return r;
}

Json estimate_json(const EstimateResult& r, const EstimateRequest& req) {
  Json j;
  j["interval_starts"] = r.hurst.interval_starts;
  j["raw"] = r.hurst.raw;
  j["smoothed"] = *r.hurst.smoothed;
  j["lfd_raw"] = r.lfd.raw;
  j["lfd_smoothed"] = *r.lfd.smoothed;
  std::vector<bool> degenerate(r.hurst.degenerate.begin(), r.hurst.degenerate.end());
  j["degenerate"] = degenerate;
  Json meta;
  meta["N"] = req.params.N;
  meta["Q"] = req.params.Q;
  meta["L"] = req.params.L;
  meta["span"] = req.span;
  meta["upsample"] = req.params.upsample;
  meta["degenerate"] = r.hurst.any_degenerate();
  j["meta"] = meta;
  j["diagnostics"] = diagnostics_json(r.hurst.diagnostics);
  return j;
}

CovarianceRequest covariance_request_from_json(const Json& j) {
  const std::string path;
  expect_object(j, path);
  expect_keys(j, path, {"mode", "hurst_expr", "hurst", "hurst_ramp", "points", "J", "theta",
                        "realizations", "sim_J", "seed", "series", "timing"});
  CovarianceRequest r;
  if (const Json* v = field(j, "mode")) {
    const auto mode = as_string(*v, "/mode");
    if (mode == "theoretical") {
      r.mode = CovMode::theoretical;
    } else if (mode == "empirical") {
      r.mode = CovMode::empirical;
    } else {
      throw SchemaError("/mode", "expected 'theoretical' or 'empirical'");
    }
  }
  r.hurst = hurst_input_from_json(j, path);
  read_size(j, "points", path, r.points);
  read_int(j, "J", path, r.truncation);
  if (const Json* v = field(j, "theta")) r.theta = as_number(*v, "/theta");
  read_size(j, "realizations", path, r.realizations);
  read_int(j, "sim_J", path, r.sim_truncation);
  read_seed(j, path, r.seed);
  return r;
}

Json matrix_json(const CovMatrix& c) {
  Json j;
  j["grid"] = c.grid();
  j["size"] = c.size();
  j["entries"] = c.entries();
  return j;
}

ClusterRequest cluster_request_from_json(const Json& j) {
  const std::string path;
  expect_object(j, path);
  expect_keys(j, path, {"method", "k", "h", "distance", "p", "linkage", "iter_max", "nstart",
                        "seed", "N", "Q", "L", "span", "upsample", "realizations", "simulate",
                        "timing"});
  ClusterRequest r;
  if (const Json* v = field(j, "method")) {
    const auto m = as_string(*v, "/method");
    if (m == "kmeans") {
      r.kmeans = true;
    } else if (m != "hclust") {
      throw SchemaError("/method", "expected 'hclust' or 'kmeans'");
    }
  }
  if (const Json* v = field(j, "k")) r.k = static_cast<std::size_t>(as_uint(*v, "/k"));
  if (const Json* v = field(j, "h")) r.h = as_number(*v, "/h");
  double p = 2.0;
  read_double(j, "p", path, p);
  if (const Json* v = field(j, "distance")) {
    r.distance = DistanceMethod::from_name(as_string(*v, "/distance"), p);
  }
  if (const Json* v = field(j, "linkage")) r.linkage = linkage_from_name(as_string(*v, "/linkage"));
  read_size(j, "iter_max", path, r.iter_max);
  read_size(j, "nstart", path, r.nstart);
  read_seed(j, path, r.seed);
  read_estimator(j, path, r.params, r.span);
  return r;
}

FamilySimulation family_simulation_from_json(const Json& j, const std::string& path) {
  expect_object(j, path);
  expect_keys(j, path, {"families", "per_family", "points", "trunc_J", "seed"});
  FamilySimulation s;
  const Json* fam = field(j, "families");
  if (!fam || !fam->is_array() || fam->empty()) {
    throw SchemaError(child(path, "families"), "expected a non-empty array of Hurst functions");
  }
  for (std::size_t i = 0; i < fam->size(); ++i) {
    s.families.push_back(
        hurst_input_from_json((*fam)[i], child(child(path, "families"), std::to_string(i))));
  }
  read_size(j, "per_family", path, s.per_family);
  read_size(j, "points", path, s.points);
  read_int(j, "trunc_J", path, s.truncation);
  read_seed(j, path, s.seed);
  return s;
}

Json cluster_json(const ClusterResult& r) {
  Json j;
  j["cluster"] = r.cluster;
  j["cluster_sizes"] = r.cluster_sizes;
  Json centers = Json::array();
  for (const auto& c : r.centers) centers.push_back(c);
  j["centers"] = centers;
  j["distance_from_center"] = r.distance_from_center;
  j["smoothed_hurst_estimates"] = rows_json(r.smoothed_hurst_estimates);
  j["raw_hurst_estimates"] = rows_json(r.raw_hurst_estimates);
  Json call;
  for (const auto& [k, v] : r.call) call[k] = v;
  j["call"] = call;
  if (r.tree) {
    Json merges = Json::array();
    for (const auto& m : r.tree->merges) merges.push_back(Json::array({m.left, m.right, m.height}));
    j["merges"] = merges;
    j["leaves"] = r.tree->leaves;
  }
  if (r.wcss) j["wcss"] = *r.wcss;
  return j;
}

const std::vector<std::string>& stat_names() {
  static const std::vector<std::string> names{"sojourn",    "exc_area", "cross_count",
                                              "cross_rate", "cross_mean", "streaks",
                                              "extremum",   "rsi"};
  return names;
}

StatsRequest stats_request_from_json(const Json& j) {
  const std::string path;
  expect_object(j, path);
  expect_keys(j, path, {"series", "prices", "statistics", "level", "direction", "subintervals",
                        "sub_interval", "period", "extremum", "timing"});
  StatsRequest r;
  if (const Json* v = field(j, "statistics")) {
    if (!v->is_array()) throw SchemaError("/statistics", "expected an array of names");
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string p = "/statistics/" + std::to_string(i);
      auto name = as_string((*v)[i], p);
      if (std::find(stat_names().begin(), stat_names().end(), name) == stat_names().end()) {
        throw SchemaError(p, "unknown statistic '" + name + "'");
      }
      r.statistics.push_back(std::move(name));
    }
  }
  read_double(j, "level", path, r.query.level);
  if (const Json* v = field(j, "direction")) {
    const auto d = as_string(*v, "/direction");
    if (d == "greater") {
      r.query.direction = Direction::greater;
    } else if (d == "lower") {
      r.query.direction = Direction::lower;
    } else {
      throw SchemaError("/direction", "expected 'greater' or 'lower'");
    }
  }
  read_size(j, "subintervals", path, r.query.subintervals);
  if (const Json* v = field(j, "sub_interval")) {
    const auto range = as_numbers(*v, "/sub_interval");
    if (range.size() != 2) throw SchemaError("/sub_interval", "expected [from, to]");
    r.query.sub_interval = std::make_pair(range[0], range[1]);
  }
  read_size(j, "period", path, r.period);
  if (const Json* v = field(j, "extremum")) {
    const auto e = as_string(*v, "/extremum");
    if (e == "max") {
      r.extremum = ExtremumKind::max;
    } else if (e == "min") {
      r.extremum = ExtremumKind::min;
    } else {
      throw SchemaError("/extremum", "expected 'max' or 'min'");
    }
  }
  return r;
}

Json run_stats(const StatsRequest& req, const TimeSeries* series, std::span<const double> prices) {
  std::vector<std::string> names = req.statistics;
  if (names.empty()) {
    if (series) {
      names.assign(stat_names().begin(), stat_names().end() - 1);
    } else {
      names = {"rsi"};
    }
  }
  Json out;
  for (const auto& name : names) {
    if (name == "rsi") {
      std::span<const double> p = prices;
      if (p.empty() && series) p = series->values();
      if (p.empty()) throw UsageError("rsi needs prices or a series");
      Json values = Json::array();
      for (const auto& v : rs_index(p, req.period)) values.push_back(v ? Json(*v) : Json());
      out["rsi"] = values;
      continue;
    }
    if (!series) throw UsageError("statistic '" + name + "' needs a series");
    const auto& x = *series;
    if (name == "sojourn") {
      out[name] = sojourn(x, req.query);
    } else if (name == "exc_area") {
      out[name] = exc_area(x, req.query);
    } else if (name == "cross_count") {
      out[name] = cross_count(x, req.query.level);
    } else if (name == "cross_rate") {
      out[name] = cross_rate(x, req.query.level);
    } else if (name == "cross_mean") {
      out[name] = cross_mean(x);
    } else if (name == "streaks") {
      const auto s = streak_stats(x, req.query);
      out[name] = {{"longest", s.longest}, {"mean", s.mean}, {"count", s.count}};
    } else if (name == "extremum") {
      const auto e = extremum(x, req.extremum);
      out[name] = {{"kind", req.extremum == ExtremumKind::max ? "max" : "min"},
                   {"value", e.value},
                   {"time", e.time}};
    } else {
      throw UsageError("unknown statistic '" + name + "'");
    }
  }
  return out;
}

}  // namespace mfrac::app
