#pragma once

#include <string>
#include <vector>

#include "mfrac/estimation.hpp"
#include "mfrac/rng.hpp"

namespace mfrac::app {

inline constexpr const char* kBenchHurst = "0.4 - 0.25*sin(6*pi*t)";

struct BenchConfig {
  std::vector<int> levels{6, 8, 10, 12, 14};
  std::size_t reps = 10;
  std::string hurst = kBenchHurst;
  SimSeed seed{42};
  EstimatorParams params{100, 2, 2, true};
  bool timing = true;
};

struct BenchRow {
  int J = 0;
  double max_err = 0.0;   // mean over repetitions of max |H_hat - H|
  double mean_err = 0.0;  // mean over repetitions of mean |H_hat - H|
  double mse = 0.0;       // mean over repetitions of mean (H_hat - H)^2
  double mean_elapsed_s = 0.0;
};

/// For each J: simulate on the dyadic grid of step 2^-max(J-4, 3) with seeds
/// derive_seed(seed, r), estimate, and compare raw estimates with H at the
/// interval starts. J must lie in [3, 20].
std::vector<BenchRow> run_bench_trunc(const BenchConfig& cfg);

/// Columns J,max_err,mean_err,mse,mean_elapsed_s; elapsed is NA without timing.
std::string bench_csv(const std::vector<BenchRow>& rows, bool timing);

}  // namespace mfrac::app
