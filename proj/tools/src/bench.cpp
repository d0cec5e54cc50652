#include "mfrac_app/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mfrac/error.hpp"
#include "mfrac/hurst_expr.hpp"
#include "mfrac/simulate.hpp"
#include "mfrac_app/csv.hpp"

namespace mfrac::app {

std::vector<BenchRow> run_bench_trunc(const BenchConfig& cfg) {
  if (cfg.reps == 0) throw DomainError("bench needs at least one repetition");
  for (int j : cfg.levels) {
    if (j < 3 || j > 20) throw DomainError("bench truncation levels must lie in [3, 20]");
  }
  const auto spec = to_hurst_spec(HurstExpr::parse(cfg.hurst));

  std::vector<BenchRow> rows;
  for (int j : cfg.levels) {
    const auto grid = GridSpec::dyadic(std::max(j - 4, 3));
    BenchRow row;
    row.J = j;
    double elapsed = 0.0;
    for (std::size_t r = 0; r < cfg.reps; ++r) {
      const auto start = std::chrono::steady_clock::now();
      const auto x = simulate_ghbmp(grid, spec, j, derive_seed(cfg.seed, r));
      elapsed += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

      const auto est = estimate_hurst(x, cfg.params);
      double max_err = 0.0, sum_abs = 0.0, sum_sq = 0.0;
      for (std::size_t i = 0; i < est.size(); ++i) {
        const double e = est.raw[i] - spec.eval(j, est.interval_starts[i]);
        max_err = std::max(max_err, std::abs(e));
        sum_abs += std::abs(e);
        sum_sq += e * e;
      }
      const double n = static_cast<double>(est.size());
      row.max_err += max_err;
      row.mean_err += sum_abs / n;
      row.mse += sum_sq / n;
    }
    const double reps = static_cast<double>(cfg.reps);
    row.max_err /= reps;
    row.mean_err /= reps;
    row.mse /= reps;
    row.mean_elapsed_s = elapsed / reps;
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows, bool timing) {
  std::string out = "J,max_err,mean_err,mse,mean_elapsed_s\n";
  for (const auto& r : rows) {
    out += std::to_string(r.J) + "," + format_double(r.max_err) + "," +
           format_double(r.mean_err) + "," + format_double(r.mse) + "," +
           (timing ? format_double(r.mean_elapsed_s) : std::string("NA")) + "\n";
  }
  return out;
}

}  // namespace mfrac::app
