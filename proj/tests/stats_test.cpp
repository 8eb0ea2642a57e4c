#include "ebdi/stats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracle.hpp"

using namespace ebdi;

namespace {

MetricSeries series(std::string name, const std::vector<double>& v) {
  MetricSeries s{std::move(name), {}};
  for (std::size_t i = 0; i < v.size(); ++i) s.values["U" + std::to_string(10 + i)] = v[i];
  return s;
}

}  // namespace

TEST(AverageRanks, TiesShareMeanRank) {
  EXPECT_EQ(average_ranks(std::vector<double>{10, 20, 20, 5}),
            (std::vector<double>{2, 3.5, 3.5, 1}));
  EXPECT_EQ(average_ranks(std::vector<double>{7, 7, 7}), (std::vector<double>{2, 2, 2}));
}

TEST(SpearmanRho, Examples) {
  EXPECT_DOUBLE_EQ(spearman_rho(std::vector<double>{1, 2, 3, 4}, std::vector<double>{10, 20, 30, 40}), 1.0);
  EXPECT_DOUBLE_EQ(spearman_rho(std::vector<double>{1, 2, 3, 4}, std::vector<double>{40, 30, 20, 10}), -1.0);
  const std::vector<double> x{1, 2, 2, 4}, y{3, 1, 4, 2};
  const double rho = spearman_rho(x, y);
  EXPECT_NEAR(rho, oracle::rank_pearson(x, y), 1e-15);
  EXPECT_NEAR(rho, -1.5 / std::sqrt(22.5), 1e-15);
}

TEST(SpearmanRho, Errors) {
  EXPECT_THROW(spearman_rho(std::vector<double>{1, 2}, std::vector<double>{1, 2}), std::invalid_argument);
  EXPECT_THROW(spearman_rho(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), std::invalid_argument);
  MetricSeries a{"a", {{"x", 1}, {"y", 2}, {"z", 3}}};
  MetricSeries b{"b", {{"x", 1}, {"y", 2}, {"w", 3}}};
  EXPECT_THROW(spearman_rho(a, b), std::invalid_argument);
}

TEST(SpearmanRho, PairwiseCompleteOverlap) {
  MetricSeries a{"a", {{"p", 1}, {"q", 2}, {"r", 3}, {"s", 4}, {"only_a", 100}}};
  MetricSeries b{"b", {{"p", 5}, {"q", 6}, {"r", 8}, {"s", 7}, {"only_b", -3}}};
  auto [rho, n] = spearman_rho(a, b);
  EXPECT_EQ(n, 4u);
  EXPECT_NEAR(rho, oracle::rank_pearson({1, 2, 3, 4}, {5, 6, 8, 7}), 1e-15);
}

TEST(SpearmanRho, ExhaustiveAgreementWithoutTies) {
  for (int n = 3; n <= 8; ++n) {
    std::vector<double> x(n);
    std::iota(x.begin(), x.end(), 1.0);
    std::vector<double> y = x;
    do {
      ASSERT_NEAR(spearman_rho(x, y), oracle::spearman_no_ties(x, y), 1e-12);
    } while (std::next_permutation(y.begin(), y.end()));
  }
}

TEST(SpearmanRho, InvariantsOnRandomData) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coarse(0, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 30)(rng);
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = coarse(rng);
    for (auto& v : y) v = coarse(rng);
    const auto cx = std::count(x.begin(), x.end(), x[0]);
    const auto cy = std::count(y.begin(), y.end(), y[0]);
    if (cx == n || cy == n) continue;
    const double rho = spearman_rho(x, y);
    EXPECT_LE(std::abs(rho), 1.0);
    EXPECT_NEAR(rho, oracle::rank_pearson(x, y), 1e-12);

    std::vector<double> fx = x, neg = y;
    for (auto& v : fx) v = std::exp(v) - 3.0;  // strictly increasing
    for (auto& v : neg) v = -v;
    EXPECT_NEAR(spearman_rho(fx, y), rho, 1e-12);
    EXPECT_NEAR(spearman_rho(x, neg), -rho, 1e-12);
  }
}

TEST(PTwoTailed, Examples) {
  EXPECT_NEAR(p_two_tailed(0.0, 3), 1.0, 1e-12);
  EXPECT_NEAR(p_two_tailed(0.0, 20), 1.0, 1e-12);
  EXPECT_NEAR(p_two_tailed(-0.457, 20), 0.043, 0.002);
  EXPECT_NEAR(p_two_tailed(0.492, 20), 0.028, 0.002);
  EXPECT_EQ(p_two_tailed(1.0, 10), 0.0);
  EXPECT_EQ(p_two_tailed(-1.0, 10), 0.0);
  EXPECT_THROW(p_two_tailed(0.3, 2), std::invalid_argument);
}

TEST(PTwoTailed, MatchesQuadratureOracle) {
  for (int n : {3, 5, 8, 12, 20, 50}) {
    for (double rho : {-0.9, -0.457, -0.1, 0.05, 0.3, 0.492, 0.75}) {
      EXPECT_NEAR(p_two_tailed(rho, n), oracle::t_two_tailed_quadrature(rho, n), 1e-8)
          << "n=" << n << " rho=" << rho;
    }
  }
}

// Gap between the t approximation and the exact permutation p-value for
// |rho| <= 0.8, frozen from exhaustive enumeration. It shrinks with n but is
// still above 0.02 at n = 8.
TEST(PTwoTailed, DistanceFromExactPermutationPValue) {
  const double envelope[] = {0, 0, 0, 0, 0.151, 0.078, 0.048, 0.028, 0.025};
  double previous = 1.0;
  for (int n = 4; n <= 8; ++n) {
    std::vector<double> x(n);
    std::iota(x.begin(), x.end(), 1.0);
    std::vector<double> y = x;
    const oracle::PermutationNull null(n);
    double worst = 0.0;
    do {
      const double rho = spearman_rho(x, y);
      if (std::abs(rho) > 0.8) continue;
      worst = std::max(worst, std::abs(p_two_tailed(rho, n) - null.p_value(rho)));
    } while (std::next_permutation(y.begin(), y.end()));
    EXPECT_LE(worst, envelope[n]) << "n=" << n;
    EXPECT_LT(worst, previous);
    previous = worst;
  }
}

TEST(Correlate, SelfCorrelationAndNote) {
  auto s = series("cited_ebdi", {0.4, 1.2, 0.9, 2.5, 0.1});
  auto r = correlate(s, s);
  EXPECT_EQ(r.rho, 1.0);
  EXPECT_EQ(r.p_two_tailed, 0.0);
  EXPECT_EQ(r.n, 5u);
  EXPECT_NE(r.method_note.find("t-approximation"), std::string::npos);
  EXPECT_NE(r.method_note.find("|rho|=1"), std::string::npos);
}
