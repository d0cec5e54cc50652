#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mfrac/error.hpp"
#include "mfrac/haar.hpp"
#include "mfrac_oracles/quadrature.hpp"

namespace {

using mfrac::haar_kernel;

TEST(HaarKernel, SingleActiveTerm) { EXPECT_DOUBLE_EQ(haar_kernel(0, 0, 0.5, 0.25), 0.25); }

TEST(HaarKernel, TelescopesToZeroAtEndOfSupportForBrownianCase) {
  EXPECT_NEAR(haar_kernel(0, 0, 0.5, 1.0), 0.0, 1e-15);
}

TEST(HaarKernel, MatchesQuadratureAtFixedPoint) {
  const double q = mfrac::oracle::haar_kernel_quadrature(3, 2, 0.7, 0.4);
  EXPECT_NEAR(haar_kernel(3, 2, 0.7, 0.4), q, 1e-8);
}

TEST(HaarKernel, ExactlyZeroUpToSupportStart) {
  for (int j = 0; j <= 6; ++j) {
    const std::int64_t count = std::int64_t{1} << j;
    for (std::int64_t k = 0; k < count; ++k) {
      const double start = std::ldexp(static_cast<double>(k), -j);
      EXPECT_EQ(haar_kernel(j, k, 0.3, start), 0.0);
      EXPECT_EQ(haar_kernel(j, k, 0.3, start - 0.01), 0.0);
      EXPECT_EQ(haar_kernel(j, k, 0.3, 0.0), 0.0);
    }
  }
}

TEST(HaarKernel, RandomTuplesMatchQuadrature) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> level(0, 8);
  std::uniform_real_distribution<double> hurst(0.05, 0.95);
  std::uniform_real_distribution<double> time(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int j = level(gen);
    const std::int64_t k =
        std::uniform_int_distribution<std::int64_t>(0, (std::int64_t{1} << j) - 1)(gen);
    const double h = hurst(gen);
    const double t = time(gen);
    const double expected = mfrac::oracle::haar_kernel_quadrature(j, k, h, t);
    EXPECT_NEAR(haar_kernel(j, k, h, t), expected, 1e-8)
        << "j=" << j << " k=" << k << " H=" << h << " t=" << t;
  }
}

TEST(HaarKernel, ContinuousAcrossBreakpoints) {
  for (double h : {0.1, 0.5, 0.9}) {
    for (double frac : {0.0, 0.5, 1.0}) {
      const double t = (3.0 + frac) / 8.0;
      const double left = haar_kernel(3, 3, h, t - 1e-12);
      const double right = haar_kernel(3, 3, h, t + 1e-12);
      EXPECT_NEAR(left, right, 1e-5);
    }
  }
}

TEST(HaarKernel, FarFieldSeriesMatchesExtendedPrecision) {
  // Large x: compare the series path against the bracket in long double.
  for (double h : {0.05, 0.3, 0.5, 0.77, 0.95}) {
    for (double x : {16.0, 17.5, 40.0, 300.25, 5000.0}) {
      const int j = 14;
      const double t = x / std::ldexp(1.0, j);
      const long double a = static_cast<long double>(h) + 0.5L;
      const long double xl = x;
      const long double bracket =
          std::pow(xl, a) - 2.0L * std::pow(xl - 0.5L, a) + std::pow(xl - 1.0L, a);
      const long double expected =
          bracket / (std::pow(2.0L, static_cast<long double>(j) * h) * a);
      const double got = haar_kernel(j, 0, h, t);
      EXPECT_NEAR(got, static_cast<double>(expected),
                  1e-9 * std::abs(static_cast<double>(expected)) + 1e-300);
    }
  }
}

TEST(HaarKernel, DomainErrors) {
  EXPECT_THROW(haar_kernel(0, 0, 0.0, 0.5), mfrac::DomainError);
  EXPECT_THROW(haar_kernel(0, 0, 1.0, 0.5), mfrac::DomainError);
  EXPECT_THROW(haar_kernel(2, 4, 0.5, 0.5), mfrac::DomainError);
  EXPECT_THROW(haar_kernel(2, -1, 0.5, 0.5), mfrac::DomainError);
  EXPECT_THROW(haar_kernel(-1, 0, 0.5, 0.5), mfrac::DomainError);
}

}  // namespace
