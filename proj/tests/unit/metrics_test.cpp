#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "samestats/error.hpp"
#include "samestats/metrics.hpp"
#include "samestats/rng.hpp"

namespace samestats {
namespace {

Dataset uniform_cloud(int rows, int dim, Rng& rng, double scale = 1.0) {
  Dataset ds;
  ds.dim = dim;
  for (int i = 0; i < rows * dim; ++i) ds.values.push_back(scale * rng.uniform());
  return ds;
}

Gaussian gaussian_1d(double mean, double var) {
  SymMatrix c(1);
  c.at(0, 0) = var;
  return {{mean}, c};
}

TEST(Correlation, DuplicatedNegatedAndConstantColumns) {
  Rng rng(1);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 50; ++i) {
    const double x = rng.uniform();
    rows.push_back({x, x, -x, 0.25, rng.uniform()});
  }
  const auto c = correlation_matrix(Dataset::from_rows(5, rows));
  EXPECT_NEAR(c.r(0, 1), 1.0, 1e-12);
  EXPECT_NEAR(c.r(0, 2), -1.0, 1e-12);
  EXPECT_TRUE(c.zero_variance[3]);
  EXPECT_FALSE(c.zero_variance[0]);
  for (int j = 0; j < 5; ++j) {
    EXPECT_EQ(c.r(j, j), 1.0);
    if (j != 3) EXPECT_EQ(c.r(3, j), 0.0);
  }
  EXPECT_THROW(correlation_matrix(Dataset::from_rows(2, {{1, 2}})), ValidationError);
}

TEST(Summary, SingleAndManyRows) {
  const auto one = summarize_distribution(Dataset::from_rows(2, {{3, -1}}));
  EXPECT_EQ(one[0].min, 3);
  EXPECT_EQ(one[0].max, 3);
  EXPECT_EQ(one[0].mean, 3);
  EXPECT_EQ(one[1].std, 0);
  const auto s = summarize_distribution(Dataset::from_rows(1, {{1}, {2}, {3}, {4}}));
  EXPECT_DOUBLE_EQ(s[0].mean, 2.5);
  EXPECT_DOUBLE_EQ(s[0].std, std::sqrt(5.0 / 3.0));
}

double naive_ks(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pts = a;
  pts.insert(pts.end(), b.begin(), b.end());
  double best = 0.0;
  for (double x : pts) {
    const double fa = static_cast<double>(std::count_if(a.begin(), a.end(), [&](double v) { return v <= x; })) / a.size();
    const double fb = static_cast<double>(std::count_if(b.begin(), b.end(), [&](double v) { return v <= x; })) / b.size();
    best = std::max(best, std::abs(fa - fb));
  }
  return best;
}

TEST(Ks, TwoSample) {
  EXPECT_NEAR(ks_two_sample({1, 2, 3}, {2.5}), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(ks_two_sample({1, 2}, {1, 2}), 0.0);
  EXPECT_EQ(ks_two_sample({0, 0.1}, {5, 6, 7}), 1.0);
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> a(static_cast<std::size_t>(rng.uniform_int(1, 40))), b(static_cast<std::size_t>(rng.uniform_int(1, 40)));
    // coarse values so that ties are common
    for (auto& v : a) v = static_cast<double>(rng.uniform_int(0, 6));
    for (auto& v : b) v = static_cast<double>(rng.uniform_int(0, 6));
    ASSERT_NEAR(ks_two_sample(a, b), naive_ks(a, b), 1e-15);
  }
}

TEST(Ks, StatisticPerColumn) {
  Rng rng(6);
  const Dataset truth = uniform_cloud(200, 3, rng);
  const auto same = ks_statistic(truth, truth, {1, 1.0, 0});
  for (double d : same) EXPECT_EQ(d, 0.0);

  Dataset shifted = truth;
  for (std::size_t i = 0; i < shifted.rows(); ++i) shifted.values[i * 3 + 1] += 1.0;
  const auto d = ks_statistic(shifted, truth, {10, 0.1, 1});
  EXPECT_EQ(d[1], 1.0);
  EXPECT_LT(d[0], 0.5);
  EXPECT_EQ(ks_statistic(shifted, truth, {10, 0.1, 1}), d);
}

TEST(GaussianKl, ClosedFormsOneDimension) {
  EXPECT_NEAR(gaussian_kl(gaussian_1d(0, 1), gaussian_1d(1, 1)), 0.5, 1e-9);
  EXPECT_NEAR(gaussian_em(gaussian_1d(0, 1), gaussian_1d(1, 1)), 1.0, 1e-9);
  // KL(N(0,4) || N(0,1)) = (4 - 1 - ln 4) / 2; W2^2 = (2 - 1)^2
  EXPECT_NEAR(gaussian_kl(gaussian_1d(0, 4), gaussian_1d(0, 1)), (3 - std::log(4.0)) / 2, 1e-8);
  EXPECT_NEAR(gaussian_em(gaussian_1d(0, 4), gaussian_1d(0, 1)), 1.0, 1e-8);
}

TEST(GaussianKl, DiagonalOracle) {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const int d = static_cast<int>(rng.uniform_int(1, 10));
    Gaussian p, q;
    p.cov = SymMatrix(d);
    q.cov = SymMatrix(d);
    double kl = 0.0, em = 0.0;
    for (int i = 0; i < d; ++i) {
      const double m0 = rng.uniform(-1, 1), m1 = rng.uniform(-1, 1);
      const double v0 = rng.uniform(0.1, 2), v1 = rng.uniform(0.1, 2);
      const double r0 = v0 + kCovarianceRidge, r1 = v1 + kCovarianceRidge;
      p.mean.push_back(m0);
      q.mean.push_back(m1);
      p.cov.at(i, i) = v0;
      q.cov.at(i, i) = v1;
      kl += 0.5 * (r0 / r1 + (m0 - m1) * (m0 - m1) / r1 - 1 + std::log(r1 / r0));
      em += (m0 - m1) * (m0 - m1) + (std::sqrt(v0) - std::sqrt(v1)) * (std::sqrt(v0) - std::sqrt(v1));
    }
    EXPECT_NEAR(gaussian_kl(p, q), kl, 1e-9 * std::max(1.0, kl));
    EXPECT_NEAR(gaussian_em(p, q), em, 1e-7);
  }
}

TEST(GaussianKl, SelfDistanceSymmetryAndSign) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const Dataset a = uniform_cloud(60, 10, rng);
    const Dataset b = uniform_cloud(80, 10, rng, 0.7);
    EXPECT_LE(std::abs(gaussian_kl(a, a)), 1e-8);
    EXPECT_LE(std::abs(gaussian_em(a, a)), 1e-8);
    EXPECT_GE(gaussian_kl(a, b), 0.0);
    EXPECT_GE(gaussian_kl(b, a), 0.0);
    EXPECT_NEAR(gaussian_em(a, b), gaussian_em(b, a), 1e-8);
  }
}

TEST(GaussianKl, Preconditions) {
  Rng rng(9);
  EXPECT_THROW(fit_gaussian(uniform_cloud(11, 10, rng)), ValidationError);
  EXPECT_NO_THROW(fit_gaussian(uniform_cloud(12, 10, rng)));

  // a constant truth column stays invertible thanks to the ridge
  Dataset truth = uniform_cloud(40, 3, rng);
  for (std::size_t i = 0; i < truth.rows(); ++i) truth.values[i * 3 + 2] = 0.5;
  const double kl = gaussian_kl(uniform_cloud(40, 3, rng), truth);
  EXPECT_TRUE(std::isfinite(kl));
}

TEST(Diameter, ExactAndRatio) {
  const Dataset sq = Dataset::from_rows(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  EXPECT_DOUBLE_EQ(point_diameter(sq, 100, 1, 0), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(coverage_diameter_ratio(sq, sq), 1.0);
  EXPECT_EQ(coverage_diameter_ratio(Dataset::from_rows(2, {{0.5, 0.5}}), sq), 0.0);
  Rng rng(10);
  const Dataset big = uniform_cloud(3000, 4, rng);
  const double sub = point_diameter(big, 500, 10, 3);
  EXPECT_LE(sub, point_diameter(big, 5000, 1, 0));
  EXPECT_GT(sub, 0.5);
}

TEST(Bbox, Examples) {
  const Dataset truth = Dataset::from_rows(2, {{0, 0}, {1, 1}});
  EXPECT_DOUBLE_EQ(bbox_ratio(Dataset::from_rows(2, {{0, 0}, {0.5, 0.5}}), truth), 0.25);
  EXPECT_DOUBLE_EQ(bbox_ratio(truth, truth), 1.0);
  // the flat third column is ignored
  const Dataset flat = Dataset::from_rows(3, {{0, 0, 2}, {1, 1, 2}});
  EXPECT_DOUBLE_EQ(bbox_ratio(Dataset::from_rows(3, {{0, 0, 1}, {0.5, 1, 3}}), flat), 0.5);
  EXPECT_THROW(bbox_ratio(truth, Dataset::from_rows(2, {{1, 1}, {1, 1}})), ValidationError);
}

Dataset grid(int k) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j) rows.push_back({static_cast<double>(i) / k, static_cast<double>(j) / k});
  return Dataset::from_rows(2, rows);
}

TEST(SplitBbox, Examples) {
  const Dataset truth = grid(20);
  EXPECT_DOUBLE_EQ(split_bbox_ratio(truth, truth), 1.0);

  // the upper-right quadrant is missing: the whole box is still spanned
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < truth.rows(); ++i)
    if (!(truth.at(i, 0) >= 0.5 && truth.at(i, 1) >= 0.5)) keep.push_back(i);
  const Dataset missing = subset(truth, keep);
  EXPECT_DOUBLE_EQ(bbox_ratio(missing, truth), 1.0);
  EXPECT_LT(split_bbox_ratio(missing, truth), bbox_ratio(missing, truth));

  // a frame around an empty centre
  keep.clear();
  for (std::size_t i = 0; i < truth.rows(); ++i)
    if (std::max(std::abs(truth.at(i, 0) - 0.5), std::abs(truth.at(i, 1) - 0.5)) > 0.3) keep.push_back(i);
  const Dataset frame = subset(truth, keep);
  EXPECT_DOUBLE_EQ(bbox_ratio(frame, truth), 1.0);
  EXPECT_LT(split_bbox_ratio(frame, truth, 4), 1.0);
  EXPECT_THROW(split_bbox_ratio(truth, truth, 1), ValidationError);
}

TEST(SplitBbox, SubsetNeverExceedsOne) {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    const Dataset truth = uniform_cloud(300, 3, rng);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < truth.rows(); ++i)
      if (rng.bernoulli(0.2)) keep.push_back(i);
    if (keep.empty()) continue;
    const Dataset s = subset(truth, keep);
    EXPECT_LE(split_bbox_ratio(s, truth), 1.0);
    EXPECT_LE(bbox_ratio(s, truth), 1.0);
  }
}

TEST(RobustEllipse, ScalingAndSelf) {
  Rng rng(12);
  const Dataset truth = uniform_cloud(200, 10, rng);
  EXPECT_NEAR(robust_ellipse_ratio(truth, truth), 1.0, 1e-12);
  Dataset half = truth;
  const auto mean = fit_gaussian(truth).mean;
  for (std::size_t i = 0; i < half.rows(); ++i)
    for (int j = 0; j < 10; ++j) {
      double& v = half.values[i * 10 + static_cast<std::size_t>(j)];
      v = mean[static_cast<std::size_t>(j)] + 0.5 * (v - mean[static_cast<std::size_t>(j)]);
    }
  EXPECT_NEAR(robust_ellipse_ratio(half, truth), std::pow(0.5, 10), 1e-12);
}

TEST(Coverage, InvariantUnderRowPermutation) {
  Rng rng(13);
  const Dataset truth = uniform_cloud(150, 4, rng);
  const Dataset s = uniform_cloud(90, 4, rng, 0.8);
  std::vector<std::size_t> order(s.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
  const Dataset p = subset(s, order);
  EXPECT_DOUBLE_EQ(bbox_ratio(p, truth), bbox_ratio(s, truth));
  EXPECT_DOUBLE_EQ(split_bbox_ratio(p, truth), split_bbox_ratio(s, truth));
  EXPECT_NEAR(robust_ellipse_ratio(p, truth), robust_ellipse_ratio(s, truth), 1e-12);
  EXPECT_DOUBLE_EQ(coverage_diameter_ratio(p, truth), coverage_diameter_ratio(s, truth));
}

TEST(Report, JsonAndCsv) {
  const double v[] = {1.0, 3.0, 2.0};
  const auto rs = repeat_stats(v);
  EXPECT_EQ(rs.mean, 2.0);
  EXPECT_EQ(rs.min, 1.0);
  EXPECT_EQ(rs.max, 3.0);
  EXPECT_EQ(rs.count, 3u);

  MetricReport r;
  r.sample = "er seed 1";
  r.truth = "ground-truth";
  r.n = 7;
  r.entries.push_back({"kl", {0.25}, rs});
  r.entries.push_back({"ks", {0.1, 0.2}, std::nullopt});
  ASSERT_NE(r.find("kl"), nullptr);
  EXPECT_EQ(r.find("em"), nullptr);
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["n"], 7);
  EXPECT_EQ(j["measures"].size(), 2u);
  EXPECT_EQ(j["measures"][0]["repeats"]["mean"], 2.0);
  const std::string csv = r.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "measure,index,value,mean,min,max");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

}  // namespace
}  // namespace samestats
