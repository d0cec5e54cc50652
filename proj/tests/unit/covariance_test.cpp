#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>

#include "mfrac/covariance.hpp"
#include "mfrac/error.hpp"
#include "mfrac/haar.hpp"
#include "mfrac/simulate.hpp"

namespace {

using namespace mfrac;

std::vector<double> grid101() { return GridSpec::uniform(0.0, 1.0, 101).points(); }

Eigen::MatrixXd to_eigen(const CovMatrix& c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = c(std::size_t(i), std::size_t(j));
  }
  return m;
}

TEST(CovGhbmp, ZeroColumnAtOriginAndSymmetric) {
  const auto c = cov_ghbmp(grid101(), HurstSpec::constant(0.3));
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(c(0, i), 0.0);
    EXPECT_EQ(c(i, 0), 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) EXPECT_EQ(c(i, j), c(j, i));
  }
}

TEST(CovGhbmp, DiagonalMatchesBruteForceTermSum) {
  const std::vector<double> grid{0.0, 0.25, 0.5, 0.9};
  const auto c = cov_ghbmp(grid, HurstSpec::constant(0.3), 8);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t l = 0; l < grid.size(); ++l) {
      double sum = 0.0;
      for (int j = 0; j <= 8; ++j) {
        for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
          sum += haar_kernel(j, k, 0.3, grid[i]) * haar_kernel(j, k, 0.3, grid[l]);
        }
      }
      EXPECT_NEAR(c(i, l), sum, 1e-12);
    }
    EXPECT_GE(c(i, i), 0.0);
  }
}

TEST(CovGhbmp, PositiveSemidefinite) {
  for (const auto& h : {HurstSpec::constant(0.3),
                        HurstSpec::from_function([](double t) { return 0.8 - 0.55 * t; })}) {
    const auto c = cov_ghbmp(grid101(), h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(c));
    const auto ev = es.eigenvalues();
    EXPECT_GE(ev.minCoeff(), -1e-8 * ev.maxCoeff());
  }
}

TEST(CovGhbmp, MatchesMonteCarloVariance) {
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const auto c = cov_ghbmp(grid, HurstSpec::constant(0.6), 6);
  std::vector<double> mids;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    mids.push_back(simulate_ghbmp(GridSpec::explicit_points(grid), HurstSpec::constant(0.6), 6,
                                  SimSeed{s})
                       .values()[1]);
  }
  double m2 = 0.0;
  for (double v : mids) m2 += v * v;
  m2 /= 2000.0;
  EXPECT_NEAR(m2, c(1, 1), 3.0 * c(1, 1) * std::sqrt(2.0 / 2000.0));
}

TEST(CovGhbmp, Errors) {
  EXPECT_THROW(cov_ghbmp(std::vector<double>{0.0, 1.5}, HurstSpec::constant(0.3)), DomainError);
  EXPECT_THROW(cov_ghbmp(std::vector<double>{0.5, 0.2}, HurstSpec::constant(0.3)), DataError);
  EXPECT_THROW(cov_ghbmp(grid101(), HurstSpec::constant(0.3), 30), ResourceError);
}

TEST(EstCov, SingleRealizationIsZero) {
  const auto x = simulate_bm(GridSpec::uniform(0.0, 1.0, 20), SimSeed{1});
  const auto c = est_cov(std::vector<TimeSeries>{x});
  for (double v : c.entries()) EXPECT_EQ(v, 0.0);
}

TEST(EstCov, NegatedPairGivesSquares) {
  const auto x = simulate_bm(GridSpec::uniform(0.0, 1.0, 20), SimSeed{1});
  std::vector<double> neg;
  for (double v : x.values()) neg.push_back(-v);
  const std::vector<TimeSeries> pair{x, TimeSeries(std::vector<double>(x.times().begin(), x.times().end()), neg)};
  const auto c = est_cov(pair);
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_DOUBLE_EQ(c(i, i), x.values()[i] * x.values()[i]);
  }
}

TEST(EstCov, PermutationInvariant) {
  std::vector<TimeSeries> xs;
  for (std::uint64_t s = 0; s < 6; ++s) xs.push_back(simulate_bm(GridSpec::uniform(0.0, 1.0, 15), SimSeed{s}));
  const auto a = est_cov(xs);
  std::reverse(xs.begin(), xs.end());
  const auto b = est_cov(xs);
  for (std::size_t i = 0; i < a.entries().size(); ++i) EXPECT_NEAR(a.entries()[i], b.entries()[i], 1e-14);
}

TEST(EstCov, Errors) {
  EXPECT_THROW(est_cov(std::vector<TimeSeries>{}), DataError);
  const std::vector<TimeSeries> mismatched{simulate_bm(GridSpec::uniform(0.0, 1.0, 10), SimSeed{1}),
                                           simulate_bm(GridSpec::uniform(0.0, 1.0, 11), SimSeed{1})};
  EXPECT_THROW(est_cov(mismatched), DataError);
}

TEST(SmoothMatrix, ConstantUnchanged) {
  const auto g = grid101();
  const CovMatrix c(g, std::vector<double>(g.size() * g.size(), 2.5));
  const auto s = smooth_matrix(c, 0.1);
  for (double v : s.entries()) EXPECT_NEAR(v, 2.5, 1e-12);
}

TEST(SmoothMatrix, TinyBandwidthIsIdentity) {
  const auto g = grid101();
  const auto c = cov_ghbmp(g, HurstSpec::constant(0.3));
  const auto s = smooth_matrix(c, 0.01 / 20.0);
  for (std::size_t i = 0; i < c.entries().size(); ++i) {
    EXPECT_NEAR(s.entries()[i], c.entries()[i], 1e-12);
  }
}

TEST(SmoothMatrix, SpikeMassPreserved) {
  const auto g = grid101();
  std::vector<double> e(g.size() * g.size(), 0.0);
  e[50 * g.size() + 50] = 1.0;
  const auto s = smooth_matrix(CovMatrix(g, e), 0.03);
  const double total = std::accumulate(s.entries().begin(), s.entries().end(), 0.0);
  EXPECT_NEAR(total, 1.0, 1e-8);
  EXPECT_LT(s(50, 50), 0.2);
  EXPECT_GT(s(50, 51), 0.0);
  // Discrete convolution oracle: separable normalized Gaussian weights.
  std::vector<double> w(g.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    w[i] = std::exp(-std::pow(g[i] - g[50], 2) / (2 * 0.03 * 0.03));
    norm += w[i];
  }
  for (std::size_t i = 40; i < 60; ++i) {
    for (std::size_t j = 40; j < 60; ++j) EXPECT_NEAR(s(i, j), w[i] * w[j] / (norm * norm), 1e-12);
  }
}

TEST(SmoothMatrix, SymmetricAndRejectsBadTheta) {
  const auto c = cov_ghbmp(grid101(), HurstSpec::constant(0.7), 8, 0.1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) EXPECT_EQ(c(i, j), c(j, i));
  }
  EXPECT_THROW(smooth_matrix(c, 0.0), DomainError);
  EXPECT_THROW(smooth_matrix(c, -1.0), DomainError);
}

}  // namespace
