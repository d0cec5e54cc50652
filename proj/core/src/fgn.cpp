#include <fftw3.h>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

#include "mfrac/error.hpp"
#include "mfrac/simulate.hpp"

namespace mfrac {

namespace {

// fftw planner calls are not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftwBuffer {
 public:
  explicit FftwBuffer(std::size_t n)
      : data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!data_) throw ResourceError("fftw_malloc failed");
  }
  ~FftwBuffer() { fftw_free(data_); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* get() const noexcept { return data_; }
  fftw_complex& operator[](std::size_t i) const noexcept { return data_[i]; }

 private:
  fftw_complex* data_;
};

class ForwardFft {
 public:
  ForwardFft(std::size_t n, const FftwBuffer& in, const FftwBuffer& out) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_FORWARD,
                             FFTW_ESTIMATE);
    if (!plan_) throw ResourceError("fftw planning failed");
  }
  ~ForwardFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  ForwardFft(const ForwardFft&) = delete;
  ForwardFft& operator=(const ForwardFft&) = delete;

  void run() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

void check_hurst(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw DomainError("Hurst parameter must lie in (0, 1)");
}

// Empty result signals a negative eigenvalue in the embedding.
std::vector<double> fgn_circulant(std::size_t n, double hurst, SimSeed seed) {
  const std::size_t m = 2 * (n - 1);
  FftwBuffer in(m), out(m);
  ForwardFft fft(m, in, out);

  for (std::size_t k = 0; k < m; ++k) {
    const auto lag = static_cast<std::int64_t>(k <= n - 1 ? k : m - k);
    in[k][0] = fgn_autocovariance(hurst, lag);
    in[k][1] = 0.0;
  }
  fft.run();

  std::vector<double> eigen(m);
  double largest = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    eigen[k] = out[k][0];
    largest = std::max(largest, eigen[k]);
  }
  for (double& e : eigen) {
    if (e < -1e-10 * largest) return {};
    e = std::max(e, 0.0);
  }

  const CounterRng rng(seed, Stream::fgn_spectral);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double amp = std::sqrt(eigen[k] * inv_m);
    in[k][0] = amp * rng.normal(2 * k);
    in[k][1] = amp * rng.normal(2 * k + 1);
  }
  fft.run();

  std::vector<double> noise(n);
  for (std::size_t i = 0; i < n; ++i) noise[i] = out[i][0];
  return noise;
}

std::vector<double> fgn_cholesky(std::size_t n, double hurst, SimSeed seed) {
  Eigen::MatrixXd cov(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cov(i, j) = fgn_autocovariance(
          hurst, static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j));
    }
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw DomainError("fGn covariance is not positive definite");
  }
  const CounterRng rng(seed, Stream::fgn_cholesky);
  Eigen::VectorXd z(n);
  for (std::size_t i = 0; i < n; ++i) z(static_cast<Eigen::Index>(i)) = rng.normal(i);
  const Eigen::VectorXd x = llt.matrixL() * z;
  return {x.data(), x.data() + x.size()};
}

}  // namespace

double fgn_autocovariance(double hurst, std::int64_t lag) {
  const double k = std::abs(static_cast<double>(lag));
  const double e = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, e) - 2.0 * std::pow(k, e) + std::pow(std::abs(k - 1.0), e));
}

std::vector<double> simulate_fgn(std::size_t n, double hurst, SimSeed seed, FgnMethod method) {
  check_hurst(hurst);
  if (n == 0) throw DomainError("fGn length must be at least 1");
  if (n == 1) return {CounterRng(seed, Stream::fgn_spectral).normal(0)};

  if (method == FgnMethod::cholesky) return fgn_cholesky(n, hurst, seed);
  auto noise = fgn_circulant(n, hurst, seed);
  if (!noise.empty()) return noise;
  if (method == FgnMethod::circulant) {
    throw DomainError("circulant embedding is not nonnegative definite");
  }
  return fgn_cholesky(n, hurst, seed);
}

}  // namespace mfrac
