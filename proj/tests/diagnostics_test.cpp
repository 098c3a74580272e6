#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "blasso/diagnostics.hpp"
#include "blasso/errors.hpp"
#include "blasso/rng.hpp"

namespace {

using namespace blasso;
using Chains = std::vector<std::vector<double>>;

Chains iid_normal(int m, int n, std::uint64_t seed, double shift_per_chain = 0.0) {
  Chains out(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    auto rng = RngStream::for_stream(seed, static_cast<std::uint64_t>(k));
    for (int i = 0; i < n; ++i) out[k].push_back(rng.normal() + shift_per_chain * k);
  }
  return out;
}

// Stationary AR(1) with unit marginal variance.
Chains ar1(int m, int n, double rho, std::uint64_t seed) {
  Chains out(static_cast<std::size_t>(m));
  const double innov = std::sqrt(1.0 - rho * rho);
  for (int k = 0; k < m; ++k) {
    auto rng = RngStream::for_stream(seed, static_cast<std::uint64_t>(k));
    double x = rng.normal();
    for (int i = 0; i < n; ++i) {
      out[k].push_back(x);
      x = rho * x + innov * rng.normal();
    }
  }
  return out;
}

Chains transform(Chains c, double (*f)(double)) {
  for (auto& chain : c)
    for (auto& x : chain) x = f(x);
  return c;
}

TEST(EssBulk, IidDrawsNearTotal) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto c = iid_normal(4, 2500, seed);
    const auto ess = ess_bulk(c);
    EXPECT_FALSE(ess.degenerate);
    EXPECT_GT(ess.value / 10000.0, 0.8);
    EXPECT_LT(ess.value / 10000.0, 1.2);
  }
}

TEST(EssBulk, Ar1MatchesAnalyticValue) {
  const double rho = 0.9;
  const double want = 4.0 * 5000.0 * (1.0 - rho) / (1.0 + rho);
  for (std::uint64_t seed : {11u, 12u}) {
    const double got = ess_bulk(ar1(4, 5000, rho, seed)).value;
    EXPECT_NEAR(got / want, 1.0, 0.25) << got;
    const double basic = ess_basic(ar1(4, 5000, rho, seed)).value;
    EXPECT_NEAR(basic / want, 1.0, 0.25) << basic;
  }
}

TEST(EssBulk, DisjointChainsCollapse) {
  Chains c = iid_normal(2, 2000, 5);
  for (auto& x : c[0]) x = std::abs(x);
  for (auto& x : c[1]) x = -std::abs(x) - 1.0;
  EXPECT_LT(ess_bulk(c).value, 0.1 * 4000.0);
}

TEST(EssBulk, InvariantUnderMonotoneMaps) {
  const auto c = ar1(3, 1000, 0.5, 21);
  const double base = ess_bulk(c).value;
  EXPECT_NEAR(ess_bulk(transform(c, [](double x) { return std::exp(x); })).value, base, 1e-9 * base);
  EXPECT_NEAR(ess_bulk(transform(c, [](double x) { return x * x * x; })).value, base, 1e-9 * base);
}

// rho = -0.1 has ESS = N * 1.1 / 0.9, above the draw count but inside 1.5x.
TEST(EssBulk, AntitheticChainsExceedDrawCount) {
  const auto c = ar1(4, 2500, -0.1, 3);
  const double ess = ess_bulk(c).value;
  EXPECT_GT(ess, 10000.0);
  EXPECT_LE(ess, 1.5 * 10000.0);
}

TEST(EssBulk, ConstantDrawsAreDegenerate) {
  const Chains c(3, std::vector<double>(50, 2.5));
  const auto ess = ess_bulk(c);
  EXPECT_TRUE(ess.degenerate);
  EXPECT_EQ(ess.value, 150.0);
  const auto r = split_r_hat(c);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.value, 1.0);
}

TEST(EssBulk, OddLengthChains) {
  const auto c = iid_normal(2, 1001, 8);
  const auto ess = ess_bulk(c);
  EXPECT_GT(ess.value, 0.7 * 2002.0);
  EXPECT_LT(ess.value, 1.3 * 2002.0);
}

TEST(Validation, RejectsBadShapes) {
  EXPECT_THROW(ess_bulk(Chains{}), DomainError);
  EXPECT_THROW(ess_bulk(Chains{std::vector<double>(7, 1.0)}), DomainError);
  EXPECT_THROW(split_r_hat(Chains{std::vector<double>(10, 1.0), std::vector<double>(9, 1.0)}), DomainError);
  Chains c = iid_normal(1, 20, 1);
  c[0][4] = std::nan("");
  EXPECT_THROW(ess_bulk(c), DomainError);
}

TEST(SplitRHat, StationaryChainsNearOne) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto c = iid_normal(4, 2000, seed);
    const double r = split_r_hat(c).value;
    EXPECT_GE(r, 0.99);
    EXPECT_LE(r, 1.01);
    EXPECT_LE(split_r_hat_classic(c).value, 1.01);
  }
}

// Means 0 and 5 with unit variance: the four split halves have means
// {0, 0, 5, 5}, sample variance 25/3, so R-hat ~ sqrt(1 + 25/3) ~ 3.06.
TEST(SplitRHat, MeanShiftedChains) {
  const auto c = iid_normal(2, 2000, 4, 5.0);
  const double classic = split_r_hat_classic(c).value;
  EXPECT_GT(classic, 2.0);
  EXPECT_NEAR(classic, std::sqrt(1.0 + 25.0 / 3.0), 0.1);
  EXPECT_GT(split_r_hat(c).value, 1.5);
}

TEST(SplitRHat, LinearTrendInflates) {
  Chains c(1);
  auto rng = RngStream(9);
  for (int i = 0; i < 1000; ++i) c[0].push_back(0.005 * i + rng.normal());
  EXPECT_GT(split_r_hat(c).value, 1.1);
  EXPECT_GT(split_r_hat_classic(c).value, 1.1);
}

// The rank-based version is exact up to rounding swapping near-equal folded
// draws, which moves a rank by one.
TEST(SplitRHat, AffineInvariance) {
  auto c = ar1(3, 800, 0.7, 31);
  const double base = split_r_hat(c).value;
  const double classic = split_r_hat_classic(c).value;
  for (auto& chain : c)
    for (auto& x : chain) x = 3.5 * x - 12.0;
  EXPECT_NEAR(split_r_hat(c).value, base, 1e-5);
  EXPECT_NEAR(split_r_hat_classic(c).value, classic, 1e-12);
}

TEST(SplitRHat, FoldedCatchesScaleDifference) {
  Chains c = iid_normal(2, 2000, 12);
  for (auto& x : c[1]) x *= 4.0;
  EXPECT_LT(split_r_hat_classic(c).value, 1.05);
  EXPECT_GT(split_r_hat(c).value, 1.1);
}

TEST(Efficiency, RatioAndIdentities) {
  EXPECT_EQ(efficiency(5000.0, 2.0), 2500.0);
  EXPECT_THROW(efficiency(10.0, 0.0), DomainError);
  EXPECT_THROW(efficiency(10.0, -1.0), DomainError);
  const auto flagged = efficiency(DiagnosticValue{0.0, true}, 3.0);
  EXPECT_EQ(flagged.value, 0.0);
  EXPECT_TRUE(flagged.degenerate);
  const auto plain = efficiency(DiagnosticValue{400.0, false}, 4.0);
  EXPECT_EQ(plain.value, 100.0);
  EXPECT_FALSE(plain.degenerate);

  EXPECT_EQ(mix_percent(5000.0, 5000), 100.0);
  EXPECT_NEAR(mix_percent(1315.0, 5000), 26.3, 1e-12);
  EXPECT_EQ(mix_percent(2500.0, 5000), 50.0);
  for (auto [ess, n, t] : {std::tuple{1315.0, 5000ul, 0.7}, std::tuple{37.2, 20000ul, 11.0}}) {
    EXPECT_NEAR(efficiency(ess, t), mix_percent(ess, n) * static_cast<double>(n) / (100.0 * t),
                1e-12 * efficiency(ess, t));
  }
}

ChainOutput fake_chain(std::uint64_t seed, int n, int p, double seconds) {
  ChainOutput out;
  auto rng = RngStream(seed);
  out.beta_draws.resize(n, p);
  out.sigma2_draws.resize(n);
  out.lambda2_draws.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) out.beta_draws(i, j) = rng.normal();
    out.sigma2_draws[i] = 1.0 + 0.1 * std::abs(rng.normal());
    out.lambda2_draws[i] = 2.0;
  }
  out.wall_time_seconds = seconds;
  out.sampling_time_seconds = 0.8 * seconds;
  return out;
}

TEST(Diagnose, ReportLayout) {
  const std::vector<ChainOutput> chains{fake_chain(1, 500, 3, 1.0), fake_chain(2, 500, 3, 1.5)};
  const auto report = diagnose(chains, {"age", "bmi", "bp"});
  ASSERT_EQ(report.parameters.size(), 5u);
  EXPECT_EQ(report.parameters[0].name, "beta[age]");
  EXPECT_EQ(report.parameters[3].name, "sigma2");
  EXPECT_EQ(report.parameters[4].name, "lambda2");
  EXPECT_EQ(report.n_total, 1000u);
  EXPECT_EQ(report.n_chains, 2u);
  EXPECT_DOUBLE_EQ(report.seconds, 2.5);
  EXPECT_DOUBLE_EQ(report.sampling_seconds, 2.0);

  std::vector<double> beta_ess;
  for (int j = 0; j < 3; ++j) beta_ess.push_back(report.parameters[j].ess);
  std::sort(beta_ess.begin(), beta_ess.end());
  EXPECT_EQ(report.beta_ess_summary, beta_ess[1]);
  EXPECT_NEAR(report.beta_mix_percent, 100.0 * beta_ess[1] / 1000.0, 1e-12);
  EXPECT_NEAR(report.beta_efficiency, beta_ess[1] / 2.5, 1e-12);

  const auto& lambda = report.find("lambda2");
  EXPECT_TRUE(lambda.degenerate);
  EXPECT_EQ(lambda.efficiency, 0.0);
  EXPECT_FALSE(report.find("sigma2").degenerate);
  EXPECT_THROW(report.find("nope"), ConfigError);

  const auto unnamed = diagnose(chains);
  EXPECT_EQ(unnamed.parameters[1].name, "beta[2]");
}

}  // namespace
