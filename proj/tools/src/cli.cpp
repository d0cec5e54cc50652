#include "mfrac_app/cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

#include "mfrac/hurst_expr.hpp"
#include "mfrac/parallel.hpp"
#include "mfrac_app/bench.hpp"
#include "mfrac_app/csv.hpp"
#include "mfrac_app/json_io.hpp"
#include "mfrac_app/server.hpp"
#include "mfrac_app/svg.hpp"

namespace mfrac::app {

namespace {

struct HurstFlags {
  std::string expr;
  double constant = 0.0;
  std::vector<double> ramp;
  CLI::Option* expr_opt = nullptr;
  CLI::Option* const_opt = nullptr;
  CLI::Option* ramp_opt = nullptr;

  void add(CLI::App* cmd) {
    expr_opt = cmd->add_option("--hurst", expr, "Hurst function of t, e.g. \"0.4 - 0.25*sin(6*pi*t)\"");
    const_opt = cmd->add_option("--hurst-const", constant, "constant Hurst exponent");
    ramp_opt = cmd->add_option("--hurst-ramp", ramp, "piecewise ramp LOW,HIGH,JUMP")
                   ->expected(3)
                   ->delimiter(',');
    expr_opt->excludes(const_opt)->excludes(ramp_opt);
    const_opt->excludes(ramp_opt);
  }

  HurstInput input() const {
    HurstInput in;
    if (*expr_opt) in.expr = expr;
    if (*const_opt) in.constant = constant;
    if (*ramp_opt) in.ramp = std::array<double, 3>{ramp[0], ramp[1], ramp[2]};
    return in;
  }
};

struct EstimatorFlags {
  EstimatorParams params;
  double span = 0.75;

  void add(CLI::App* cmd) {
    cmd->add_option("-N,--intervals", params.N, "number of subintervals N")->capture_default_str();
    cmd->add_option("-Q,--refine", params.Q, "resolution ratio Q")->capture_default_str();
    cmd->add_option("-L,--order", params.L, "increment order L")->capture_default_str();
    cmd->add_option("--span", span, "LOESS span")->capture_default_str();
    cmd->add_flag("--upsample", params.upsample,
                  "interpolate short series up to the required resolution");
  }
};

void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

PlotPanel series_panel(const TimeSeries& x, const std::string& title) {
  return {title, {{"X(t)", to_vector(x.times()), to_vector(x.values()), false}}, std::nullopt};
}

std::vector<PlotPanel> estimate_panels(const TimeSeries& x, const EstimateResult& r) {
  const auto& h = r.hurst;
  return {
      series_panel(x, "Series"),
      {"Hurst estimates",
       {{"raw", h.interval_starts, h.raw, true}, {"smoothed", h.interval_starts, *h.smoothed, false}},
       std::make_pair(0.0, 1.0)},
      {"Local fractal dimension",
       {{"raw", r.lfd.interval_starts, r.lfd.raw, true},
        {"smoothed", r.lfd.interval_starts, *r.lfd.smoothed, false}},
       std::make_pair(1.0, 2.0)},
  };
}

// --- simulate ----------------------------------------------------------------

struct SimulateFlags {
  std::string kind;
  HurstFlags hurst;
  SimulateRequest req;
  std::string format = "csv";
  std::string output = "-";
  std::string svg;
};

void add_simulate(CLI::App& app, SimulateFlags& f) {
  auto* cmd = app.add_subcommand("simulate", "simulate one realization");
  cmd->add_option("kind", f.kind, "ghbmp, bm, bbridge, fbm, fbbridge or fgn")
      ->required()
      ->check(CLI::IsMember({"ghbmp", "bm", "bbridge", "fbm", "fbbridge", "fgn"}));
  f.hurst.add(cmd);
  cmd->add_option("--points", f.req.points, "grid points")->capture_default_str();
  cmd->add_option("--start", f.req.t_start, "first grid time")->capture_default_str();
  cmd->add_option("--end", f.req.t_end, "last grid time")->capture_default_str();
  cmd->add_option("--terminal", f.req.terminal, "bridge end value")->capture_default_str();
  cmd->add_option("--trunc,-J", f.req.truncation, "GHBMP truncation level J")->capture_default_str();
  cmd->add_option("--seed", f.req.seed.value, "random seed")->capture_default_str();
  cmd->add_option("--format", f.format)->check(CLI::IsMember({"csv", "json", "svg"}))->capture_default_str();
  cmd->add_option("-o,--output", f.output, "output path, - for stdout")->capture_default_str();
  cmd->add_option("--svg", f.svg, "also write an SVG plot here");
}

void cmd_simulate(SimulateFlags& f, std::ostream& out) {
  f.req.kind = process_kind_from_name(f.kind);
  f.req.hurst = f.hurst.input();
  Diagnostics diag;
  const auto x = run_simulate(f.req, &diag);
  std::string text;
  if (f.format == "csv") {
    text = write_series_csv(x);
  } else if (f.format == "json") {
    Json j = series_json(x);
    j["meta"] = simulate_meta_json(f.req);
    j["diagnostics"] = diagnostics_json(diag);
    text = dump(j);
  } else {
    text = render_svg({series_panel(x, std::string(process_kind_name(f.req.kind)))});
  }
  emit(text, f.output, out);
  if (!f.svg.empty()) {
    write_file(f.svg, render_svg({series_panel(x, std::string(process_kind_name(f.req.kind)))}));
  }
}

// --- estimate ----------------------------------------------------------------

struct EstimateFlags {
  std::string input;
  EstimatorFlags est;
  std::string kind = "hurst";
  std::string format = "csv";
  std::string output = "-";
  std::string svg;
};

void add_estimate(CLI::App& app, EstimateFlags& f) {
  auto* cmd = app.add_subcommand("estimate", "estimate the Hurst function of a t,x CSV");
  cmd->add_option("input,-i,--input", f.input, "t,x CSV file")->required();
  f.est.add(cmd);
  cmd->add_option("--kind", f.kind, "table contents")
      ->check(CLI::IsMember({"hurst", "lfd"}))
      ->capture_default_str();
  cmd->add_option("--format", f.format)->check(CLI::IsMember({"csv", "json", "svg"}))->capture_default_str();
  cmd->add_option("-o,--output", f.output, "output path, - for stdout")->capture_default_str();
  cmd->add_option("--svg", f.svg, "also write an SVG plot here");
}

void cmd_estimate(const EstimateFlags& f, std::ostream& out) {
  const auto x = read_series_csv(read_file(f.input), f.input);
  const EstimateRequest req{f.est.params, f.est.span};
  const auto r = run_estimate(x, req);
  std::string text;
  if (f.format == "csv") {
    const auto& e = f.kind == "lfd" ? r.lfd : r.hurst;
    text = "interval_start,raw,smoothed\n";
    for (std::size_t i = 0; i < e.size(); ++i) {
      text += format_double(e.interval_starts[i]) + "," + format_double(e.raw[i]) + "," +
              format_double((*e.smoothed)[i]) + "\n";
    }
  } else if (f.format == "json") {
    text = dump(estimate_json(r, req));
  } else {
    text = render_svg(estimate_panels(x, r));
  }
  emit(text, f.output, out);
  if (!f.svg.empty()) write_file(f.svg, render_svg(estimate_panels(x, r)));
}

// --- bench-trunc -------------------------------------------------------------

struct BenchFlags {
  BenchConfig cfg;
  std::string output = "-";
  bool no_timing = false;
};

void add_bench(CLI::App& app, BenchFlags& f) {
  auto* cmd = app.add_subcommand("bench-trunc", "error and runtime of GHBMP against truncation level");
  cmd->add_option("--levels,-J", f.cfg.levels, "truncation levels")->delimiter(',')->capture_default_str();
  cmd->add_option("--reps", f.cfg.reps, "repetitions per level")->capture_default_str();
  cmd->add_option("--hurst", f.cfg.hurst, "Hurst function of t")->capture_default_str();
  cmd->add_option("--seed", f.cfg.seed.value, "base seed")->capture_default_str();
  cmd->add_option("-N,--intervals", f.cfg.params.N, "number of subintervals N")->capture_default_str();
  cmd->add_option("-Q,--refine", f.cfg.params.Q, "resolution ratio Q")->capture_default_str();
  cmd->add_option("-L,--order", f.cfg.params.L, "increment order L")->capture_default_str();
  cmd->add_flag("--no-timing", f.no_timing, "write NA for elapsed time (reproducible output)");
  cmd->add_option("-o,--output", f.output, "output path, - for stdout")->capture_default_str();
}

void cmd_bench(BenchFlags& f, std::ostream& out) {
  f.cfg.timing = !f.no_timing;
  emit(bench_csv(run_bench_trunc(f.cfg), f.cfg.timing), f.output, out);
}

// --- covariance --------------------------------------------------------------

struct CovarianceFlags {
  std::string mode;
  HurstFlags hurst;
  CovarianceRequest req;
  double theta = 0.0;
  CLI::Option* theta_opt = nullptr;
  std::string inputs;
  std::string format = "csv";
  std::string output = "-";
};

void add_covariance(CLI::App& app, CovarianceFlags& f) {
  auto* cmd = app.add_subcommand("covariance", "theoretical or empirical GHBMP covariance matrix");
  cmd->add_option("mode", f.mode, "theoretical or empirical")
      ->required()
      ->check(CLI::IsMember({"theoretical", "empirical"}));
  f.hurst.add(cmd);
  cmd->add_option("--points", f.req.points, "grid points on [0, 1]")->capture_default_str();
  cmd->add_option("--trunc,-J", f.req.truncation, "truncation level of the covariance sum")
      ->capture_default_str();
  f.theta_opt = cmd->add_option("--theta", f.theta, "Gaussian smoothing bandwidth");
  cmd->add_option("--realizations,-M", f.req.realizations, "simulated paths (empirical)")
      ->capture_default_str();
  cmd->add_option("--sim-trunc", f.req.sim_truncation, "truncation level of simulated paths")
      ->capture_default_str();
  cmd->add_option("--seed", f.req.seed.value, "base seed")->capture_default_str();
  cmd->add_option("--inputs", f.inputs, "directory of t,x CSVs (empirical, instead of simulating)");
  cmd->add_option("--format", f.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("-o,--output", f.output, "output path, - for stdout")->capture_default_str();
}

void cmd_covariance(CovarianceFlags& f, std::ostream& out) {
  f.req.mode = f.mode == "empirical" ? CovMode::empirical : CovMode::theoretical;
  f.req.hurst = f.hurst.input();
  if (*f.theta_opt) f.req.theta = f.theta;
  std::vector<TimeSeries> provided;
  if (!f.inputs.empty()) {
    if (f.req.mode != CovMode::empirical) throw UsageError("--inputs needs empirical mode");
    for (const auto& p : csv_files_in(f.inputs)) {
      provided.push_back(read_series_csv(read_file(p), p.string()));
    }
    if (provided.empty()) throw DataError("no .csv files in '" + f.inputs + "'");
  }
  const auto c = run_covariance(f.req, provided);
  emit(f.format == "csv" ? write_matrix_csv(c) : dump(matrix_json(c)), f.output, out);
}

// --- cluster -----------------------------------------------------------------

struct ClusterFlags {
  std::string method;
  std::string inputs;
  ClusterRequest req;
  std::size_t k = 0;
  double h = 0.0;
  CLI::Option* k_opt = nullptr;
  CLI::Option* h_opt = nullptr;
  std::string distance = "euclidean";
  double p = 2.0;
  std::string linkage = "complete";
  EstimatorFlags est;
  std::string format = "json";
  std::string output = "-";
};

void add_cluster(CLI::App& app, ClusterFlags& f) {
  auto* cmd = app.add_subcommand("cluster", "cluster a directory of t,x CSVs by estimated Hurst function");
  cmd->add_option("method", f.method, "hclust or kmeans")
      ->required()
      ->check(CLI::IsMember({"hclust", "kmeans"}));
  cmd->add_option("--inputs", f.inputs, "directory of t,x CSVs")->required();
  f.k_opt = cmd->add_option("-k,--clusters", f.k, "number of clusters");
  f.h_opt = cmd->add_option("--height", f.h, "cut height (hclust)");
  cmd->add_option("--distance", f.distance, "euclidean, manhattan, minkowski, supremum, canberra")
      ->capture_default_str();
  cmd->add_option("--p", f.p, "Minkowski exponent")->capture_default_str();
  cmd->add_option("--linkage", f.linkage,
                  "single, complete, average, mcquitty, median, centroid, ward.D, ward.D2")
      ->capture_default_str();
  cmd->add_option("--iter-max", f.req.iter_max, "k-means iterations")->capture_default_str();
  cmd->add_option("--nstart", f.req.nstart, "k-means restarts")->capture_default_str();
  cmd->add_option("--seed", f.req.seed.value, "k-means seed")->capture_default_str();
  f.est.add(cmd);
  cmd->add_option("--format", f.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("-o,--output", f.output, "output path, - for stdout")->capture_default_str();
}

void cmd_cluster(ClusterFlags& f, std::ostream& out) {
  f.req.kmeans = f.method == "kmeans";
  if (*f.k_opt) f.req.k = f.k;
  if (*f.h_opt) {
    if (f.req.kmeans) throw UsageError("--height applies to hclust only");
    f.req.h = f.h;
  }
  f.req.distance = DistanceMethod::from_name(f.distance, f.p);
  f.req.linkage = linkage_from_name(f.linkage);
  f.req.params = f.est.params;
  f.req.span = f.est.span;

  const auto files = csv_files_in(f.inputs);
  std::vector<TimeSeries> series;
  std::vector<std::string> names;
  for (const auto& p : files) {
    series.push_back(read_series_csv(read_file(p), p.string()));
    names.push_back(p.filename().string());
  }
  const auto r = run_cluster(series, f.req);
  std::string text;
  if (f.format == "json") {
    Json j = cluster_json(r);
    j["items"] = names;
    text = dump(j);
  } else {
    text = "item,cluster,distance_from_center\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
      text += names[i] + "," + std::to_string(r.cluster[i]) + "," +
              format_double(r.distance_from_center[i]) + "\n";
    }
  }
  emit(text, f.output, out);
}

// --- stats -------------------------------------------------------------------

struct StatsFlags {
  std::string statistic;
  std::string input;
  std::string prices;
  StatsRequest req;
  std::string direction = "greater";
  double from = 0.0, to = 0.0;
  CLI::Option* from_opt = nullptr;
  CLI::Option* to_opt = nullptr;
  std::string which = "max";
  std::string format = "csv";
  std::string output = "-";
};

void add_stats(CLI::App& app, StatsFlags& f) {
  auto* cmd = app.add_subcommand("stats", "geometric statistics and RSI");
  cmd->add_option("statistic", f.statistic)
      ->required()
      ->check(CLI::IsMember(
          {"sojourn", "area", "crossings", "cross-mean", "streaks", "extremum", "rsi", "all"}));
  cmd->add_option("-i,--input", f.input, "t,x CSV file");
  cmd->add_option("--prices", f.prices, "single-column price CSV (rsi)");
  cmd->add_option("--level,-A", f.req.query.level, "level A")->capture_default_str();
  cmd->add_option("--direction", f.direction)
      ->check(CLI::IsMember({"greater", "lower"}))
      ->capture_default_str();
  cmd->add_option("--subintervals", f.req.query.subintervals, "resampling count")
      ->capture_default_str();
  f.from_opt = cmd->add_option("--from", f.from, "sub-interval start");
  f.to_opt = cmd->add_option("--to", f.to, "sub-interval end");
  f.from_opt->needs(f.to_opt);
  f.to_opt->needs(f.from_opt);
  cmd->add_option("--period", f.req.period, "RSI period")->capture_default_str();
  cmd->add_option("--which", f.which)->check(CLI::IsMember({"max", "min"}))->capture_default_str();
  cmd->add_option("--format", f.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("-o,--output", f.output, "output path, - for stdout")->capture_default_str();
}

void cmd_stats(StatsFlags& f, std::ostream& out) {
  if (f.input.empty() == f.prices.empty()) throw UsageError("give exactly one of --input and --prices");
  f.req.query.direction = f.direction == "greater" ? Direction::greater : Direction::lower;
  if (*f.from_opt) f.req.query.sub_interval = std::make_pair(f.from, f.to);
  f.req.extremum = f.which == "max" ? ExtremumKind::max : ExtremumKind::min;
  if (f.statistic == "area") {
    f.req.statistics = {"exc_area"};
  } else if (f.statistic == "crossings") {
    f.req.statistics = {"cross_count", "cross_rate"};
  } else if (f.statistic == "cross-mean") {
    f.req.statistics = {"cross_mean"};
  } else if (f.statistic != "all") {
    f.req.statistics = {f.statistic};
  }

  std::optional<TimeSeries> x;
  std::vector<double> prices;
  if (!f.input.empty()) x = read_series_csv(read_file(f.input), f.input);
  if (!f.prices.empty()) prices = read_price_csv(read_file(f.prices), f.prices);
  if (f.statistic != "rsi" && !x) throw UsageError(f.statistic + " needs --input");

  const Json r = run_stats(f.req, x ? &*x : nullptr, prices);
  if (f.format == "json") {
    emit(dump(r), f.output, out);
    return;
  }
  std::string text;
  if (f.statistic == "rsi") {
    const std::span<const double> p = prices.empty() ? x->values() : std::span<const double>(prices);
    text = "index,price,rsi\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto& v = r["rsi"][i];
      text += std::to_string(i + 1) + "," + format_double(p[i]) + "," +
              (v.is_null() ? std::string("NA") : format_double(v.get<double>())) + "\n";
    }
  } else {
    text = "statistic,value\n";
    for (const auto& [name, value] : r.items()) {
      if (value.is_object()) {
        for (const auto& [k, v] : value.items()) {
          if (v.is_string()) continue;
          text += name + "_" + k + "," +
                  (v.is_number_float() ? format_double(v.get<double>()) : v.dump()) + "\n";
        }
      } else {
        text += name + "," +
                (value.is_number_float() ? format_double(value.get<double>()) : value.dump()) + "\n";
      }
    }
  }
  emit(text, f.output, out);
}

// --- serve -------------------------------------------------------------------

struct ServeFlags {
  ServerOptions opts;
  std::string static_dir;
};

void add_serve(CLI::App& app, ServeFlags& f) {
  auto* cmd = app.add_subcommand("serve", "start the HTTP API and explorer");
  cmd->add_option("--host", f.opts.host)->capture_default_str();
  cmd->add_option("--port", f.opts.port)->capture_default_str();
  cmd->add_option("--static", f.static_dir, "directory served at /");
  cmd->add_option("--cors-origin", f.opts.cors_origin)->capture_default_str();
  cmd->add_option("--max-points", f.opts.api.limits.max_points, "points cap per request")
      ->capture_default_str();
}

int cmd_serve(ServeFlags& f, std::ostream& out, std::ostream& err) {
  f.opts.static_dir = f.static_dir.empty() ? default_static_dir() : std::filesystem::path(f.static_dir);
  Server server(f.opts);
  out << "mfrac: serving on http://" << f.opts.host << ":" << f.opts.port << std::endl;
  if (!server.run()) {
    err << "mfrac: error: cannot listen on " << f.opts.host << ":" << f.opts.port << "\n";
    return kExitData;
  }
  return kExitOk;
}

void report_parse_error(const ParseError& e, const std::string& source, std::ostream& err) {
  err << "mfrac: error: " << e.what() << "\n";
  if (!source.empty()) {
    err << "  " << source << "\n  " << std::string(e.offset(), ' ') << "^\n";
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"mfrac: multifractional process simulation and analysis", "mfrac"};
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t threads = 0;
  app.add_option("--threads", threads, "worker thread cap (0 = all cores)")
      ->envname("MFRAC_THREADS");

  SimulateFlags sim;
  EstimateFlags est;
  BenchFlags bench;
  CovarianceFlags cov;
  ClusterFlags clu;
  StatsFlags st;
  ServeFlags serve;
  add_simulate(app, sim);
  add_estimate(app, est);
  add_bench(app, bench);
  add_covariance(app, cov);
  add_cluster(app, clu);
  add_stats(app, st);
  add_serve(app, serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  set_thread_limit(threads);

  std::string expr_source;
  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "simulate") {
      expr_source = sim.hurst.expr;
      cmd_simulate(sim, out);
    } else if (name == "estimate") {
      cmd_estimate(est, out);
    } else if (name == "bench-trunc") {
      expr_source = bench.cfg.hurst;
      cmd_bench(bench, out);
    } else if (name == "covariance") {
      expr_source = cov.hurst.expr;
      cmd_covariance(cov, out);
    } else if (name == "cluster") {
      cmd_cluster(clu, out);
    } else if (name == "stats") {
      cmd_stats(st, out);
    } else if (name == "serve") {
      return cmd_serve(serve, out, err);
    }
  } catch (const ParseError& e) {
    report_parse_error(e, expr_source, err);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "mfrac: error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "mfrac: error: " << e.what() << "\n";
    return kExitData;
  } catch (const DomainError& e) {
    err << "mfrac: error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ResourceError& e) {
    err << "mfrac: error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "mfrac: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace mfrac::app
