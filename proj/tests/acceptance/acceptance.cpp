// Acceptance suite: one PASS/FAIL line per criterion.
//
//   mfrac_acceptance            run everything
//   mfrac_acceptance --only 5   run criterion 5 (comma lists allowed)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <unistd.h>

#include "mfrac/clustering.hpp"
#include "mfrac/covariance.hpp"
#include "mfrac/distance.hpp"
#include "mfrac/estimation.hpp"
#include "mfrac/geom_stats.hpp"
#include "mfrac/haar.hpp"
#include "mfrac/hurst_expr.hpp"
#include "mfrac/hurst_spec.hpp"
#include "mfrac/parallel.hpp"
#include "mfrac/rng.hpp"
#include "mfrac/simulate.hpp"
#include "mfrac_app/api.hpp"
#include "mfrac_app/bench.hpp"
#include "mfrac_app/cli.hpp"
#include "mfrac_app/csv.hpp"
#include "mfrac_app/requests.hpp"
#include "mfrac_oracles/ari.hpp"
#include "mfrac_oracles/brute_stats.hpp"
#include "mfrac_oracles/naive_hclust.hpp"
#include "mfrac_oracles/quadrature.hpp"

namespace fs = std::filesystem;
using namespace mfrac;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------

Outcome kernel_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 gen(101);
  std::uniform_int_distribution<int> level(0, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> hurst(0.05, 0.95);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int j = level(gen);
    const auto width = std::int64_t{1} << j;
    const auto k = std::uniform_int_distribution<std::int64_t>(0, width - 1)(gen);
    const double h = hurst(gen);
    const double t = unit(gen);
    const double err = std::abs(haar_kernel(j, k, h, t) - oracle::haar_kernel_quadrature(j, k, h, t));
    worst = std::max(worst, err);
  }
  const double elapsed = seconds_since(start);
  return {worst < 1e-6 && elapsed < 10.0,
          fmt("max |err| = %.3g (< 1e-6) over 100 tuples, %.2f s (< 10 s)", worst, elapsed)};
}

// ---------------------------------------------------------------------------

Outcome zero_origin() {
  std::mt19937_64 gen(202);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const int J = static_cast<int>(gen() % 11);
    const double a = 0.05 + 0.9 * unit(gen);
    const double b = unit(gen) - 0.5;
    HurstSpec spec = HurstSpec::constant(a);
    switch (i % 4) {
      case 1: spec = HurstSpec::from_function([a, b](double t) { return a + b * t; }); break;
      case 2:
        spec = HurstSpec::from_function(
            [a, b](double t) { return a + 0.5 * b * std::sin(6.0 * M_PI * t); });
        break;
      case 3: spec = piecewise_ramp_levels(0.2, 0.8, 0.25 + 0.5 * unit(gen)); break;
      default: break;
    }
    GridSpec grid = GridSpec::uniform(0.0, 0.05 + 0.95 * unit(gen), 2 + gen() % 300);
    if (i % 3 == 0) {
      std::set<double> pts{0.0};
      const std::size_t n = 1 + gen() % 60;
      while (pts.size() < n + 1) pts.insert(unit(gen));
      grid = GridSpec::explicit_points({pts.begin(), pts.end()});
    }
    const auto x = simulate_ghbmp(grid, spec, J, SimSeed{gen()});
    if (!(x.values()[0] == 0.0)) ++bad;
  }
  return {bad == 0, fmt("%zu of 1000 fuzzed paths with X(0) != 0", bad)};
}

// ---------------------------------------------------------------------------

Outcome fgn_exactness() {
  const auto start = Clock::now();
  constexpr std::size_t kPaths = 200, kLen = 1024, kLags = 6;
  bool pass = true;
  std::string detail;
  for (double h : {0.3, 0.5, 0.7}) {
    std::vector<std::vector<double>> per_path(kLags, std::vector<double>(kPaths));
    for (std::size_t p = 0; p < kPaths; ++p) {
      const auto x = simulate_fgn(kLen, h, derive_seed(SimSeed{3}, p));
      for (std::size_t k = 0; k < kLags; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i + k < kLen; ++i) s += x[i] * x[i + k];
        per_path[k][p] = s / static_cast<double>(kLen - k);
      }
    }
    double worst_z = 0.0;
    for (std::size_t k = 0; k < kLags; ++k) {
      double mean = 0.0;
      for (double v : per_path[k]) mean += v;
      mean /= kPaths;
      double var = 0.0;
      for (double v : per_path[k]) var += (v - mean) * (v - mean);
      var /= kPaths - 1;
      const double se = std::sqrt(var / kPaths);
      const double z = std::abs(mean - fgn_autocovariance(h, static_cast<std::int64_t>(k))) / se;
      worst_z = std::max(worst_z, z);
    }
    pass = pass && worst_z <= 3.0;
    detail += fmt("H=%.1f max z=%.2f; ", h, worst_z);
  }
  const double elapsed = seconds_since(start);
  pass = pass && elapsed < 60.0;
  return {pass, detail + fmt("(<= 3 SE), %.1f s (< 60 s)", elapsed)};
}

// ---------------------------------------------------------------------------

Outcome estimator_consistency() {
  bool pass = true;
  std::string detail;
  const auto grid = GridSpec::uniform(0.0, 1.0, (1u << 14) + 1);
  for (double h : {0.3, 0.5, 0.7}) {
    double sum = 0.0;
    std::size_t count = 0;
    bool in_range = true;
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto x = simulate_fbm(grid, h, derive_seed(SimSeed{4}, s));
      const auto est = estimate_hurst(x, EstimatorParams{});
      for (double v : est.raw) {
        in_range = in_range && v >= 0.0 && v <= 1.0;
        sum += v;
        ++count;
      }
    }
    const double mean = sum / static_cast<double>(count);
    pass = pass && in_range && std::abs(mean - h) <= 0.1;
    detail += fmt("H=%.1f mean=%.4f%s; ", h, mean, in_range ? "" : " (out of [0,1])");
  }
  return {pass, detail + "tolerance 0.1"};
}

// ---------------------------------------------------------------------------

Outcome truncation_trend() {
  const auto start = Clock::now();
  app::BenchConfig cfg;
  cfg.levels = {6, 10, 14};
  cfg.reps = 10;
  cfg.timing = false;
  const auto rows = app::run_bench_trunc(cfg);
  const double m6 = rows[0].mse, m10 = rows[1].mse, m14 = rows[2].mse;
  const double elapsed = seconds_since(start);
  return {m14 < m10 && m10 < m6 && m14 <= 0.2 && elapsed < 600.0,
          fmt("MSE J=6 %.4f, J=10 %.4f, J=14 %.4f (decreasing, J=14 <= 0.2), %.0f s (< 600 s)",
              m6, m10, m14, elapsed)};
}

// ---------------------------------------------------------------------------

Outcome covariance() {
  const auto start = Clock::now();
  std::vector<double> grid(101);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i) / 100.0;
  const auto spec = HurstSpec::constant(0.3);
  const auto c = cov_ghbmp(grid, spec, 8);
  const std::size_t n = c.size();

  double asym = 0.0, first = 0.0;
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    first = std::max({first, std::abs(c(0, i)), std::abs(c(i, 0))});
    for (std::size_t j = 0; j < n; ++j) {
      asym = std::max(asym, std::abs(c(i, j) - c(j, i)));
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c(i, j);
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();

  app::CovarianceRequest req;
  req.mode = app::CovMode::empirical;
  req.hurst.constant = 0.3;
  req.points = 101;
  req.realizations = 200;
  req.sim_truncation = 8;
  req.seed = SimSeed{6};
  const auto e = app::run_covariance(req);
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dev = std::max(dev, std::abs(e(i, j) - c(i, j)));
  }
  const double elapsed = seconds_since(start);
  const bool pass = asym == 0.0 && first == 0.0 && lo >= -1e-8 * hi && dev <= 0.15 &&
                    elapsed < 300.0;
  return {pass, fmt("asymmetry %.3g, first row max %.3g, min/max eigenvalue %.3g/%.3g "
                    "(>= -1e-8 ratio), est_cov max deviation %.4f (<= 0.15), %.1f s (< 300 s)",
                    asym, first, lo, hi, dev, elapsed)};
}

// ---------------------------------------------------------------------------

Outcome clustering_recovery() {
  const auto start = Clock::now();
  int hclust_ok = 0, kmeans_ok = 0;
  std::string trace;
  for (std::uint64_t s = 0; s < 10; ++s) {
    app::FamilySimulation sim;
    sim.families.resize(3);
    sim.families[0].expr = "0.3";
    sim.families[1].expr = "0.8 - 0.55*t";
    sim.families[2].expr = "0.4 - 0.25*sin(6*pi*t)";
    sim.per_family = 5;
    sim.points = 2049;
    sim.truncation = 15;
    sim.seed = SimSeed{s};
    const auto data = app::simulate_families(sim);

    const EstimatorParams params{};
    auto [raw, smoothed] = hurst_features(data.series, params);

    HclustOptions ho;
    ho.k = 3;
    ho.linkage = Linkage::complete;
    const auto h = hclust_features(raw, smoothed, ho);
    KmeansOptions ko;
    ko.k = 3;
    ko.nstart = 5;
    ko.seed = SimSeed{s};
    const auto k = kmeans_features(raw, smoothed, ko);

    const double ari_h = oracle::adjusted_rand_index(h.cluster, data.family);
    const double ari_k = oracle::adjusted_rand_index(k.cluster, data.family);
    hclust_ok += ari_h == 1.0;
    kmeans_ok += ari_k == 1.0;
    trace += fmt(" %.2f/%.2f", ari_h, ari_k);
  }
  const double elapsed = seconds_since(start);
  return {hclust_ok >= 8 && kmeans_ok >= 8 && elapsed < 600.0,
          fmt("ARI = 1 in hclust %d/10, kmeans %d/10 (>= 8 each), %.0f s (< 600 s); "
              "per-seed ARI hclust/kmeans:",
              hclust_ok, kmeans_ok, elapsed) +
              trace};
}

// ---------------------------------------------------------------------------

Outcome linkage_oracle() {
  std::mt19937_64 gen(808);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::size_t mismatches = 0;
  double worst_height = 0.0;
  const std::pair<Linkage, const char*> cases[] = {
      {Linkage::single, "single"}, {Linkage::complete, "complete"}, {Linkage::average, "average"}};
  for (int set = 0; set < 50; ++set) {
    std::vector<std::vector<double>> rows(8, std::vector<double>(5));
    for (auto& r : rows) {
      for (double& v : r) v = normal(gen);
    }
    const auto d = distance_matrix(rows, DistanceMethod::euclidean());
    for (const auto& [linkage, name] : cases) {
      const auto tree = hclust(d, rows.size(), linkage);
      const auto expected = oracle::naive_hclust(d, rows.size(), name);
      if (tree.merges.size() != expected.size()) {
        ++mismatches;
        continue;
      }
      for (std::size_t m = 0; m < expected.size(); ++m) {
        if (tree.merges[m].left != expected[m].left || tree.merges[m].right != expected[m].right) {
          ++mismatches;
          break;
        }
        worst_height =
            std::max(worst_height, std::abs(tree.merges[m].height - expected[m].height) /
                                       std::max(1.0, std::abs(expected[m].height)));
      }
    }
  }
  // Average linkage sums distances in a different order than the oracle, so
  // heights are compared to rounding; merge pairs and their order are exact.
  return {mismatches == 0 && worst_height <= 1e-12,
          fmt("%zu merge-sequence mismatches over 150 trees, max height rel diff %.3g (<= 1e-12)",
              mismatches, worst_height)};
}

// ---------------------------------------------------------------------------

Outcome rsi_fixture() {
  const std::vector<double> prices{
      100.70, 100.76, 101.61, 103.33, 103.30, 103.26, 105.04, 106.01, 105.74, 106.48,
      106.22, 105.95, 106.39, 104.68, 103.16, 102.79, 101.98, 102.49, 101.79, 100.57,
      102.24, 102.21, 102.48, 101.26, 100.91, 101.22, 100.27, 100.85, 100.45, 100.36};
  const std::vector<double> expected{61.53846, 59.32109, 54.67637, 56.96133, 53.01101, 46.90549,
                                     54.61171, 54.45880, 55.66208, 49.32085, 47.64392, 49.28855,
                                     44.65883, 47.87783, 45.89514, 45.43918};
  const auto rsi = rs_index(prices, 14);
  std::size_t missing = 0;
  for (std::size_t i = 0; i < 14 && i < rsi.size(); ++i) missing += !rsi[i].has_value();
  double worst = 0.0;
  bool present = rsi.size() == 30;
  for (std::size_t i = 0; present && i < expected.size(); ++i) {
    if (!rsi[14 + i]) {
      present = false;
      break;
    }
    worst = std::max(worst, std::abs(*rsi[14 + i] - expected[i]));
  }
  return {present && missing == 14 && worst <= 5e-5,
          fmt("%zu leading missing (14), max |err| over 16 values %.3g (<= 5e-5)", missing, worst)};
}

// ---------------------------------------------------------------------------

Outcome geometric_oracles() {
  std::mt19937_64 gen(1010);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t failures = 0;
  for (int i = 0; i < 100; ++i) {
    const auto grid = GridSpec::uniform(0.0, 0.5 + unit(gen), 20 + gen() % 400);
    const auto x = simulate_bm(grid, SimSeed{gen()});
    std::vector<double> vals(x.values().begin(), x.values().end());
    LevelQuery q;
    q.level = vals[gen() % vals.size()] + 0.1 * (unit(gen) - 0.5);
    q.direction = (i % 2 == 0) ? Direction::greater : Direction::lower;
    q.subintervals = 50 + gen() % 2000;
    if (i % 3 == 0) {
      const double a = x.t_start() + 0.3 * unit(gen) * (x.t_end() - x.t_start());
      q.sub_interval = std::pair{a, a + 0.5 * (x.t_end() - a)};
    }
    const bool greater = q.direction == Direction::greater;
    const auto r = resample_for_query(x, q);

    // The resampled grid itself against an independent interpolation.
    bool ok = r.values.size() == q.subintervals + 1;
    for (std::size_t k = 0; ok && k < r.values.size(); ++k) {
      const double t = r.t1 + static_cast<double>(k) * r.delta;
      const auto ts = x.times();
      auto hi = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
      hi = std::clamp<std::size_t>(hi, 1, ts.size() - 1);
      const double w = (t - ts[hi - 1]) / (ts[hi] - ts[hi - 1]);
      const double expect = vals[hi - 1] + w * (vals[hi] - vals[hi - 1]);
      ok = std::abs(expect - r.values[k]) <= 1e-12 * (1.0 + std::abs(expect));
    }

    ok = ok && sojourn(x, q) == oracle::brute_sojourn(r.values, r.delta, q.level, greater);
    ok = ok && exc_area(x, q) == oracle::brute_area(r.values, r.delta, q.level, greater);
    const auto st = streak_stats(x, q);
    const auto [longest, mean] = oracle::brute_streaks(r.values, r.delta, q.level, greater);
    ok = ok && st.longest == longest && st.mean == mean;
    ok = ok && cross_count(x, q.level) == oracle::brute_crossings(vals, q.level);

    const auto mx = extremum(x, ExtremumKind::max);
    const auto mn = extremum(x, ExtremumKind::min);
    std::size_t imax = 0, imin = 0;
    for (std::size_t k = 1; k < vals.size(); ++k) {
      if (vals[k] > vals[imax]) imax = k;
      if (vals[k] < vals[imin]) imin = k;
    }
    ok = ok && mx.value == vals[imax] && mx.time == x.times()[imax];
    ok = ok && mn.value == vals[imin] && mn.time == x.times()[imin];
    failures += !ok;
  }

  const TimeSeries ramp({0.0, 1.0}, {0.0, 1.0});
  LevelQuery q;
  q.level = 0.5;
  q.subintervals = 10000;
  const double delta = 1.0 / 10000.0;
  const double s = sojourn(ramp, q);
  const bool ramp_ok = std::abs(s - 0.5) <= delta + 1e-15;
  return {failures == 0 && ramp_ok,
          fmt("%zu of 100 fuzzed series disagree with brute force; ramp sojourn above 0.5 = %.6f "
              "(0.5 +/- %.0e)",
              failures, s, delta)};
}

// ---------------------------------------------------------------------------

struct CliRun {
  int code;
  std::string out;
  std::string err;
  std::vector<std::pair<std::string, std::string>> files;
};

CliRun run_cli_in(const fs::path& dir, std::size_t threads, const std::vector<std::string>& args) {
  std::vector<std::string> full{"mfrac", "--threads", std::to_string(threads)};
  for (const auto& a : args) {
    std::string s = a;
    if (const auto pos = s.find("{dir}"); pos != std::string::npos) {
      s.replace(pos, 5, dir.string());
    }
    full.push_back(s);
  }
  std::vector<const char*> argv;
  for (const auto& a : full) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r{app::run_cli(static_cast<int>(argv.size()), argv.data(), out, err), out.str(), err.str(),
           {}};
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().filename().string().rfind("out_", 0) == 0) {
      r.files.emplace_back(e.path().filename().string(), app::read_file(e.path()));
      fs::remove(e.path());
    }
  }
  std::sort(r.files.begin(), r.files.end());
  return r;
}

Outcome determinism() {
  const std::size_t many = std::max<std::size_t>(4, std::thread::hardware_concurrency());
  const fs::path root =
      fs::temp_directory_path() / ("mfrac_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const fs::path inputs = root / "inputs";
  fs::create_directories(inputs / "runs");

  // Shared inputs, produced once.
  const auto prep = [&](std::vector<std::string> args) {
    run_cli_in(inputs, 1, args);
  };
  prep({"simulate", "ghbmp", "--hurst", "0.4 - 0.25*sin(6*pi*t)", "--points", "4097", "-J", "12",
        "--seed", "3", "-o", (inputs / "path.csv").string()});
  for (int i = 0; i < 6; ++i) {
    prep({"simulate", "fbm", "--hurst-const", i < 3 ? "0.3" : "0.7", "--points", "1025", "--seed",
          std::to_string(i), "-o", (inputs / "runs" / ("r" + std::to_string(i) + ".csv")).string()});
  }
  app::write_file(inputs / "prices.csv",
                  "100.70\n100.76\n101.61\n103.33\n103.30\n103.26\n105.04\n106.01\n105.74\n"
                  "106.48\n106.22\n105.95\n106.39\n104.68\n103.16\n102.79\n101.98\n102.49\n");

  const std::string path = (inputs / "path.csv").string();
  const std::string runs = (inputs / "runs").string();
  const std::vector<std::vector<std::string>> commands{
      {"simulate", "ghbmp", "--hurst", "0.4 - 0.25*sin(6*pi*t)", "--points", "16385", "-J", "14",
       "--seed", "7"},
      {"simulate", "ghbmp", "--hurst-ramp", "0.2,0.8,0.5", "--points", "1025", "-J", "10",
       "--format", "json"},
      {"simulate", "ghbmp", "--hurst", "0.5", "--points", "257", "-J", "8", "--format", "svg"},
      {"simulate", "bm", "--points", "2049", "--seed", "1"},
      {"simulate", "bbridge", "--points", "2049", "--terminal", "0.5", "--seed", "1"},
      {"simulate", "fbm", "--hurst-const", "0.3", "--points", "4097", "--seed", "1"},
      {"simulate", "fbbridge", "--hurst-const", "0.6", "--points", "1025", "--terminal", "2"},
      {"simulate", "fgn", "--hurst-const", "0.8", "--points", "4096", "--seed", "2", "-o",
       "{dir}/out_fgn.csv"},
      {"estimate", path},
      {"estimate", path, "--format", "json", "-N", "50", "--span", "0.5"},
      {"estimate", path, "--kind", "lfd", "--format", "svg", "-o", "{dir}/out_est.svg"},
      {"bench-trunc", "--levels", "6,8", "--reps", "2", "--no-timing"},
      {"covariance", "theoretical", "--hurst", "0.3", "--points", "33", "-J", "8"},
      {"covariance", "theoretical", "--hurst", "0.2 + 0.5*t", "--points", "21", "--theta", "0.05",
       "--format", "json"},
      {"covariance", "empirical", "--hurst", "0.3", "--points", "33", "-M", "40", "--seed", "5"},
      {"covariance", "empirical", "--inputs", runs},
      {"cluster", "hclust", "--inputs", runs, "-k", "2"},
      {"cluster", "hclust", "--inputs", runs, "--height", "0.3", "--linkage", "average",
       "--format", "csv"},
      {"cluster", "kmeans", "--inputs", runs, "-k", "2", "--nstart", "3", "--seed", "4"},
      {"stats", "all", "-i", path, "-A", "0.1", "--format", "json"},
      {"stats", "streaks", "-i", path, "-A", "0", "--direction", "lower", "--from", "0.2", "--to",
       "0.7"},
      {"stats", "rsi", "--prices", (inputs / "prices.csv").string(), "--period", "5"},
  };

  std::size_t differing = 0, failed = 0;
  std::string names;
  const fs::path dir_one = root / "one", dir_many = root / "many";
  fs::create_directories(dir_one);
  fs::create_directories(dir_many);
  for (const auto& cmd : commands) {
    const auto a = run_cli_in(dir_one, 1, cmd);
    const auto b = run_cli_in(dir_many, many, cmd);
    if (a.code != 0 || b.code != 0) {
      ++failed;
      names += " [" + cmd[0] + " " + cmd[1] + " exit " + std::to_string(a.code) + ": " + a.err + "]";
    } else if (a.out != b.out || a.files != b.files) {
      ++differing;
      names += " [" + cmd[0] + " " + cmd[1] + "]";
    }
  }

  // Core seeded operations called directly.
  const auto core_ops = [&](std::size_t threads) {
    set_thread_limit(threads);
    std::ostringstream s;
    const auto put = [&](std::span<const double> v) {
      for (double d : v) s << app::format_double(d) << ',';
      s << '\n';
    };
    const auto spec = to_hurst_spec(HurstExpr::parse("0.5 + 0.3*cos(2*pi*t)"));
    put(simulate_ghbmp(GridSpec::dyadic(12), spec, 13, SimSeed{11}).values());
    put(simulate_bm(GridSpec::uniform(0, 1, 1000), SimSeed{11}).values());
    put(simulate_bbridge(GridSpec::uniform(0, 1, 1000), 1.0, SimSeed{11}).values());
    put(simulate_fgn(3000, 0.35, SimSeed{11}));
    put(simulate_fgn(300, 0.35, SimSeed{11}, FgnMethod::cholesky));
    put(simulate_fbm(GridSpec::uniform(0, 2, 3001), 0.65, SimSeed{11}).values());
    put(simulate_fbbridge(GridSpec::uniform(0, 1, 1001), 0.65, 0.0, SimSeed{11}).values());
    std::vector<double> g(41);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<double>(i) / 40.0;
    put(cov_ghbmp(g, spec, 9, 0.05).entries());
    std::vector<TimeSeries> reps;
    for (std::uint64_t m = 0; m < 30; ++m) {
      reps.push_back(simulate_ghbmp(GridSpec::explicit_points(g), spec, 9, derive_seed(SimSeed{11}, m)));
    }
    put(est_cov(reps).entries());
    auto [raw, smoothed] = hurst_features(reps, EstimatorParams{10, 2, 2, true});
    KmeansOptions ko;
    ko.k = 3;
    ko.nstart = 4;
    ko.seed = SimSeed{11};
    const auto km = kmeans_features(raw, smoothed, ko);
    for (int c : km.cluster) s << c << ',';
    put(km.distance_from_center);
    app::ApiOptions api;
    const auto resp = app::handle_api(
        "POST", "/api/simulate",
        R"({"kind":"ghbmp","hurst_expr":"0.3 + 0.4*t","points":513,"trunc_J":10,"seed":99})", api);
    s << resp.status << resp.body;
    return s.str();
  };
  const bool core_same = core_ops(1) == core_ops(many);
  set_thread_limit(std::max<std::size_t>(1, std::thread::hardware_concurrency()));
  fs::remove_all(root);

  return {differing == 0 && failed == 0 && core_same,
          fmt("%zu CLI commands at 1 vs %zu threads: %zu differ, %zu failed; core seeded "
              "operations %s",
              commands.size(), many, differing, failed, core_same ? "identical" : "DIFFER") +
              names};
}

// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "kernel oracle", kernel_oracle},
      {2, "zero origin", zero_origin},
      {3, "fGn autocovariance", fgn_exactness},
      {4, "estimator consistency", estimator_consistency},
      {5, "truncation trend", truncation_trend},
      {6, "covariance", covariance},
      {7, "clustering recovery", clustering_recovery},
      {8, "linkage oracle", linkage_oracle},
      {9, "RSI fixture", rsi_fixture},
      {10, "geometric statistics", geometric_oracles},
      {11, "determinism", determinism},
  };
  return all;
}

std::set<int> parse_only(const std::string& list) {
  std::set<int> ids;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) ids.insert(std::stoi(item));
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = parse_only(argv[++i]);
    } else {
      std::cerr << "usage: mfrac_acceptance [--only N[,M...]]\n";
      return 2;
    }
  }

  int failures = 0;
  for (const auto& c : criteria()) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << "criterion " << (c.id < 10 ? " " : "") << c.id << "  "
              << (o.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
