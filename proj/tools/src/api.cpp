#include "mfrac_app/api.hpp"

#include <chrono>
#include <random>

#include "mfrac/parallel.hpp"
#include "mfrac_app/json_io.hpp"

namespace mfrac::app {

namespace {

class ApiError : public std::runtime_error {
 public:
  ApiError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}
  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }

 private:
  int status_;
  std::string code_;
};

[[noreturn]] void too_large(const std::string& message) {
  throw ApiError(413, "too_large", message);
}

std::uint64_t default_seed() {
  static thread_local std::random_device rd;
  const std::uint64_t hi = rd();
  return ((hi << 32) | rd()) & ((std::uint64_t{1} << 53) - 1);
}

std::uint64_t ensure_seed(Json& obj, const ApiOptions& opt) {
  auto it = obj.find("seed");
  if (it == obj.end() || it->is_null()) {
    obj["seed"] = opt.seed_source ? opt.seed_source() : default_seed();
  }
  return obj["seed"].is_number_unsigned() ? obj["seed"].get<std::uint64_t>() : 0;
}

Json parse_body(std::string_view body) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded()) throw ApiError(400, "invalid_json", "request body is not valid JSON");
  if (!j.is_object()) throw ApiError(400, "schema", "request body must be a JSON object");
  return j;
}

void check_series(const TimeSeries& x, const ApiLimits& lim) {
  if (x.size() > lim.max_points) {
    too_large("series has " + std::to_string(x.size()) + " points; the limit is " +
              std::to_string(lim.max_points));
  }
}

void check_simulation(const SimulateRequest& req, const ApiLimits& lim, double copies = 1.0) {
  if (req.points > lim.max_points) {
    too_large("points = " + std::to_string(req.points) + " exceeds the limit of " +
              std::to_string(lim.max_points));
  }
  if (copies * simulation_cost(req) > lim.max_kernel_evals) {
    too_large("simulation too expensive: lower trunc_J, points or the number of paths");
  }
}

Json simulate(Json body, const ApiOptions& opt) {
  ensure_seed(body, opt);
  const auto req = simulate_request_from_json(body);
  check_simulation(req, opt.limits);
  Diagnostics diag;
  const auto x = run_simulate(req, &diag);
  Json out = series_json(x);
  out["meta"] = simulate_meta_json(req);
  out["diagnostics"] = diagnostics_json(diag);
  return out;
}

Json estimate(Json body, const ApiOptions& opt) {
  const auto req = estimate_request_from_json(body);
  const bool has_series = body.contains("series") && !body["series"].is_null();
  const bool has_sim = body.contains("simulate") && !body["simulate"].is_null();
  if (has_series == has_sim) {
    throw SchemaError("/", "give exactly one of 'series' and 'simulate'");
  }
  Json sim_meta;
  std::optional<TimeSeries> x;
  Diagnostics sim_diag;
  if (has_series) {
    x = series_from_json(body["series"], "/series");
    check_series(*x, opt.limits);
  } else {
    if (!body["simulate"].is_object()) throw SchemaError("/simulate", "expected a JSON object");
    ensure_seed(body["simulate"], opt);
    const auto sreq = simulate_request_from_json(body["simulate"]);
    check_simulation(sreq, opt.limits);
    x = run_simulate(sreq, &sim_diag);
    sim_meta = simulate_meta_json(sreq);
  }
  Json out = estimate_json(run_estimate(*x, req), req);
  if (has_sim) {
    out["series"] = series_json(*x);
    out["meta"]["simulate"] = sim_meta;
    for (const auto& w : sim_diag.warnings) out["diagnostics"].push_back(w);
  }
  return out;
}

Json covariance(Json body, const ApiOptions& opt) {
  std::vector<TimeSeries> provided;
  if (body.contains("series") && !body["series"].is_null()) {
    const auto& arr = body["series"];
    if (!arr.is_array()) throw SchemaError("/series", "expected an array of series");
    if (arr.size() > opt.limits.max_realizations) too_large("too many series");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      provided.push_back(series_from_json(arr[i], "/series/" + std::to_string(i)));
      if (provided.back().size() > opt.limits.max_matrix_points) {
        too_large("covariance series are limited to " +
                  std::to_string(opt.limits.max_matrix_points) + " points");
      }
    }
  }
  const bool empirical = body.value("mode", std::string("theoretical")) == "empirical";
  if (empirical && provided.empty()) ensure_seed(body, opt);
  const auto req = covariance_request_from_json(body);
  if (!provided.empty() && req.mode != CovMode::empirical) {
    throw SchemaError("/series", "series are only accepted in empirical mode");
  }
  if (req.points > opt.limits.max_matrix_points) {
    too_large("covariance grids are limited to " + std::to_string(opt.limits.max_matrix_points) +
              " points");
  }
  if (provided.empty()) {
    SimulateRequest cost;
    cost.points = req.points;
    if (req.mode == CovMode::theoretical) {
      cost.truncation = req.truncation;
      check_simulation(cost, opt.limits, static_cast<double>(req.points));
    } else {
      if (req.realizations > opt.limits.max_realizations) too_large("too many realizations");
      cost.truncation = req.sim_truncation;
      check_simulation(cost, opt.limits, static_cast<double>(req.realizations));
    }
  }
  Json out = matrix_json(run_covariance(req, provided));
  Json meta;
  meta["mode"] = req.mode == CovMode::theoretical ? "theoretical" : "empirical";
  if (req.theta) meta["theta"] = *req.theta;
  if (req.mode == CovMode::theoretical) {
    meta["J"] = req.truncation;
  } else if (provided.empty()) {
    meta["realizations"] = req.realizations;
    meta["sim_J"] = req.sim_truncation;
    meta["seed"] = req.seed.value;
  } else {
    meta["realizations"] = provided.size();
  }
  out["meta"] = meta;
  return out;
}

Json cluster(Json body, const ApiOptions& opt) {
  const bool has_series = body.contains("realizations") && !body["realizations"].is_null();
  const bool has_sim = body.contains("simulate") && !body["simulate"].is_null();
  if (has_series == has_sim) {
    throw SchemaError("/", "give exactly one of 'realizations' and 'simulate'");
  }
  if (body.value("method", std::string("hclust")) == "kmeans") ensure_seed(body, opt);
  const auto req = cluster_request_from_json(body);

  std::vector<TimeSeries> series;
  std::vector<int> family;
  Json meta;
  if (has_series) {
    const auto& arr = body["realizations"];
    if (!arr.is_array()) throw SchemaError("/realizations", "expected an array of series");
    if (arr.size() > opt.limits.max_realizations) too_large("too many realizations");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      series.push_back(series_from_json(arr[i], "/realizations/" + std::to_string(i)));
      check_series(series.back(), opt.limits);
    }
  } else {
    if (!body["simulate"].is_object()) throw SchemaError("/simulate", "expected a JSON object");
    ensure_seed(body["simulate"], opt);
    const auto sim = family_simulation_from_json(body["simulate"], "/simulate");
    const double paths = static_cast<double>(sim.families.size() * sim.per_family);
    if (paths > static_cast<double>(opt.limits.max_realizations)) too_large("too many realizations");
    SimulateRequest cost;
    cost.points = sim.points;
    cost.truncation = sim.truncation;
    check_simulation(cost, opt.limits, paths);
    auto labelled = simulate_families(sim);
    series = std::move(labelled.series);
    family = std::move(labelled.family);
    meta["simulate_seed"] = sim.seed.value;
  }
  Json out = cluster_json(run_cluster(series, req));
  if (!family.empty()) out["family"] = family;
  if (req.kmeans) meta["seed"] = req.seed.value;
  out["meta"] = meta;
  return out;
}

Json stats(Json body, const ApiOptions& opt) {
  const auto req = stats_request_from_json(body);
  std::optional<TimeSeries> x;
  std::vector<double> prices;
  if (body.contains("series") && !body["series"].is_null()) {
    x = series_from_json(body["series"], "/series");
    check_series(*x, opt.limits);
  }
  if (body.contains("prices") && !body["prices"].is_null()) {
    const auto& p = body["prices"];
    if (!p.is_array()) throw SchemaError("/prices", "expected an array of numbers");
    if (p.size() > opt.limits.max_points) too_large("too many prices");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_number()) throw SchemaError("/prices/" + std::to_string(i), "expected a number");
      prices.push_back(p[i].get<double>());
    }
  }
  if (!x && prices.empty()) throw SchemaError("/", "give 'series' or 'prices'");
  if (req.query.subintervals > 10'000'000) too_large("subintervals is limited to 10^7");
  Json out;
  out["results"] = run_stats(req, x ? &*x : nullptr, prices);
  Json meta;
  meta["level"] = req.query.level;
  meta["direction"] = req.query.direction == Direction::greater ? "greater" : "lower";
  meta["subintervals"] = req.query.subintervals;
  if (req.query.sub_interval) {
    meta["sub_interval"] = {req.query.sub_interval->first, req.query.sub_interval->second};
  }
  meta["period"] = req.period;
  out["meta"] = meta;
  return out;
}

Json health(const ApiOptions& opt) {
  Json j;
  j["status"] = "ok";
  j["version"] = MFRAC_VERSION;
  j["threads"] = thread_limit();
  j["limits"] = {{"max_points", opt.limits.max_points},
                 {"max_kernel_evals", opt.limits.max_kernel_evals},
                 {"max_realizations", opt.limits.max_realizations},
                 {"max_matrix_points", opt.limits.max_matrix_points}};
  return j;
}

ApiResponse error_response(int status, const std::string& code, const std::string& message,
                           const Json& extra = Json::object()) {
  Json err;
  err["code"] = code;
  err["message"] = message;
  for (const auto& [k, v] : extra.items()) err[k] = v;
  ApiResponse r;
  r.status = status;
  r.body = Json{{"error", err}}.dump();
  return r;
}

}  // namespace

ApiResponse handle_api(std::string_view method, std::string_view path, std::string_view body,
                       const ApiOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ApiResponse response;
  try {
    Json out;
    if (path == "/api/health") {
      if (method != "GET") throw ApiError(405, "method_not_allowed", "use GET");
      out = health(options);
    } else {
      using Handler = Json (*)(Json, const ApiOptions&);
      Handler handler = nullptr;
      if (path == "/api/simulate") handler = simulate;
      if (path == "/api/estimate") handler = estimate;
      if (path == "/api/covariance") handler = covariance;
      if (path == "/api/cluster") handler = cluster;
      if (path == "/api/stats") handler = stats;
      if (!handler) throw ApiError(404, "not_found", "no endpoint " + std::string(path));
      if (method != "POST") throw ApiError(405, "method_not_allowed", "use POST");
      Json j = parse_body(body);
      const bool timing = j.value("timing", false);
      out = handler(std::move(j), options);
      if (timing) {
        out["meta"]["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
      }
    }
    response.body = out.dump();
  } catch (const ApiError& e) {
    response = error_response(e.status(), e.code(), e.what());
  } catch (const SchemaError& e) {
    response = error_response(400, "schema", e.what(), {{"path", e.path()}});
  } catch (const ParseError& e) {
    response = error_response(400, "parse_error", e.what(), {{"offset", e.offset()}});
  } catch (const UsageError& e) {
    response = error_response(400, "invalid_request", e.what());
  } catch (const ResourceError& e) {
    response = error_response(413, "too_large", e.what());
  } catch (const DomainError& e) {
    response = error_response(422, "domain_error", e.what());
  } catch (const DataError& e) {
    response = error_response(422, "data_error", e.what());
  } catch (const Json::exception& e) {
    response = error_response(400, "schema", e.what());
  } catch (const std::exception& e) {
    response = error_response(500, "internal", e.what());
  }
  response.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return response;
}

}  // namespace mfrac::app
