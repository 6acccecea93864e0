#include "erel/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "erel/errors.hpp"
#include "oracles.hpp"

using namespace erel;

namespace {

std::vector<double> random_image(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> value(0, 255);
  std::vector<double> img(n);
  for (double& v : img) v = value(rng);
  return img;
}

} // namespace

TEST(Scoring, Corr2HandComputedValue) {
  // One member vs two members on a 3x3 canvas, one pixel shared:
  // r = sqrt(7)/4 from the definition.
  const BinaryMask a = rasterize({{0, 0}}, 3, 3);
  const BinaryMask b = rasterize({{0, 0}, {1, 1}}, 3, 3);
  EXPECT_NEAR(corr2(a, b), std::sqrt(7.0) / 4.0, 1e-12);
}

TEST(Scoring, Corr2SelfCorrelationIsOne) {
  std::mt19937_64 rng(31);
  const std::vector<double> img = random_image(rng, 64);
  EXPECT_NEAR(corr2(img, img), 1.0, 1e-9);
}

TEST(Scoring, Corr2ComplementIsMinusOne) {
  std::mt19937_64 rng(32);
  const BinaryMask a = oracle::random_mask(rng, 8, 8, 0.4);
  std::vector<double> ia = to_image(a);
  std::vector<double> ib;
  for (double v : ia) ib.push_back(1.0 - v);
  EXPECT_NEAR(corr2(ia, ib), -1.0, 1e-9);
}

TEST(Scoring, Corr2SymmetricAndBounded) {
  std::mt19937_64 rng(33);
  for (int iter = 0; iter < 50; ++iter) {
    const std::vector<double> a = random_image(rng, 100);
    const std::vector<double> b = random_image(rng, 100);
    const double r = corr2(a, b);
    EXPECT_GE(r, -1.0 - 1e-12);
    EXPECT_LE(r, 1.0 + 1e-12);
    EXPECT_NEAR(r, corr2(b, a), 1e-9);
  }
}

TEST(Scoring, Corr2AffineInvariance) {
  std::mt19937_64 rng(34);
  const std::vector<double> a = random_image(rng, 80);
  const std::vector<double> b = random_image(rng, 80);
  std::vector<double> scaled;
  for (double v : a) scaled.push_back(3.5 * v + 11.0);
  EXPECT_NEAR(corr2(scaled, b), corr2(a, b), 1e-9);
  for (double& v : scaled) v = -2.0 * v;
  EXPECT_NEAR(corr2(scaled, b), -corr2(a, b), 1e-9);
}

TEST(Scoring, Corr2MatchesDefinition) {
  std::mt19937_64 rng(35);
  for (int iter = 0; iter < 50; ++iter) {
    const std::vector<double> a = random_image(rng, 144);
    const std::vector<double> b = random_image(rng, 144);
    EXPECT_NEAR(corr2(a, b), oracle::corr2(a, b), 1e-9);
  }
}

TEST(Scoring, Corr2Errors) {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{1, 2};
  EXPECT_THROW(corr2(a, b), input_error);
  const std::vector<double> flat{5, 5, 5};
  const std::vector<double> varied{1, 2, 3};
  EXPECT_THROW(corr2(flat, varied), degenerate_error);
  EXPECT_THROW(corr2(varied, flat), degenerate_error);
  EXPECT_THROW(corr2(BinaryMask(3, 3), BinaryMask(4, 3)), input_error);
}

TEST(Scoring, ApproximateLumenKeepsBelowMeanPixels) {
  FrameImage img(3, 3);
  img.at(0, 0) = 10;
  img.at(0, 1) = 200;
  img.at(0, 2) = 200;
  const GrayMask g = extract_gray({{0, 0}, {0, 1}, {0, 2}}, img);
  const BinaryMask lumen = approximate_lumen(g);
  EXPECT_EQ(lumen.area(), 1u);
  EXPECT_TRUE(lumen.test(0, 0));
}

TEST(Scoring, ApproximateLumenRejectsUniformRegion) {
  FrameImage img(3, 3, 50);
  const GrayMask g = extract_gray({{0, 0}, {1, 1}}, img);
  EXPECT_THROW(approximate_lumen(g), degenerate_error);
}

TEST(Scoring, ApproximateLumenRejectsEmptyRegion) {
  GrayMask g(BinaryMask(3, 3), std::vector<std::uint8_t>(9, 0));
  EXPECT_THROW(approximate_lumen(g), degenerate_error);
}

TEST(Scoring, Pass1KeepsScoresAtOrAboveMean) {
  const std::vector<CorrelationScore> scores{{0, 0.1}, {1, 0.5}, {2, 0.9}};
  const std::vector<int> kept = pass1_filter(scores);
  EXPECT_EQ(kept, (std::vector<int>{1, 2})); // mean is 0.5, comparison inclusive
}

TEST(Scoring, Pass1KeepsEverythingWhenFlat) {
  std::vector<CorrelationScore> scores;
  for (int i = 0; i < 5; ++i) scores.push_back({i, 0.1});
  EXPECT_EQ(pass1_filter(scores).size(), 5u);
}

TEST(Scoring, Pass1AlwaysKeepsTheArgmax) {
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> value(-1, 1);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<CorrelationScore> scores;
    const int n = 1 + static_cast<int>(rng() % 40);
    int argmax = 0;
    for (int i = 0; i < n; ++i) {
      scores.push_back({i, value(rng)});
      if (scores[static_cast<std::size_t>(i)].r >
          scores[static_cast<std::size_t>(argmax)].r) {
        argmax = i;
      }
    }
    const std::vector<int> kept = pass1_filter(scores);
    EXPECT_NE(std::find(kept.begin(), kept.end(), argmax), kept.end());
  }
}

TEST(Scoring, Pass1RejectsEmptyInput) {
  EXPECT_THROW(pass1_filter({}), input_error);
}

TEST(Scoring, CompactnessHandValues) {
  // Region of 6 pixels, ellipse mask of 8 pixels, overlapping in 4.
  BinaryMask region(4, 4);
  region.set_row_span(0, 0, 2);
  region.set_row_span(1, 0, 2);
  BinaryMask ellipse(4, 4);
  ellipse.set_row_span(1, 1, 2);
  ellipse.set_row_span(2, 0, 3);
  ellipse.set_row_span(3, 1, 2);
  ASSERT_EQ(region.area(), 6u);
  ASSERT_EQ(ellipse.area(), 8u);
  ASSERT_EQ(intersect(region, ellipse).area(), 2u);
  const CompactnessScore s = compactness(region, ellipse, 7);
  EXPECT_EQ(s.erel_index, 7);
  EXPECT_DOUBLE_EQ(s.m1, 2.0 / 8.0);
  EXPECT_DOUBLE_EQ(s.m2, 2.0 / 6.0);
  EXPECT_DOUBLE_EQ(s.total, s.m1 + s.m2);
}

TEST(Scoring, CompactnessOfIdenticalMasksIsPerfect) {
  std::mt19937_64 rng(37);
  const BinaryMask m = oracle::random_mask(rng, 10, 10, 0.4);
  const CompactnessScore s = compactness(m, m);
  EXPECT_DOUBLE_EQ(s.m1, 1.0);
  EXPECT_DOUBLE_EQ(s.m2, 1.0);
  EXPECT_DOUBLE_EQ(s.total, 2.0);
}

TEST(Scoring, CompactnessRatiosAreUnitInterval) {
  std::mt19937_64 rng(38);
  for (int iter = 0; iter < 100; ++iter) {
    BinaryMask a = oracle::random_mask(rng, 12, 12, 0.3);
    BinaryMask b = oracle::random_mask(rng, 12, 12, 0.3);
    if (a.empty() || b.empty()) continue;
    const CompactnessScore s = compactness(a, b);
    EXPECT_GE(s.m1, 0.0);
    EXPECT_LE(s.m1, 1.0);
    EXPECT_GE(s.m2, 0.0);
    EXPECT_LE(s.m2, 1.0);
    const bool perfect = s.m1 == 1.0 && s.m2 == 1.0;
    EXPECT_EQ(perfect, a == b);
  }
}

TEST(Scoring, CompactnessRejectsEmptyMasks) {
  BinaryMask m(4, 4);
  BinaryMask filled(4, 4);
  filled.set(1, 1);
  EXPECT_THROW(compactness(m, filled), degenerate_error);
  EXPECT_THROW(compactness(filled, m), degenerate_error);
}

TEST(Scoring, ToImageRendersBinaryAndGray) {
  FrameImage img(2, 2);
  img.at(0, 0) = 120;
  img.at(1, 1) = 30;
  const GrayMask g = extract_gray({{0, 0}, {1, 1}}, img);
  const std::vector<double> gray = to_image(g);
  EXPECT_EQ(gray, (std::vector<double>{120, 0, 0, 30}));
  const std::vector<double> binary = to_image(g.mask());
  EXPECT_EQ(binary, (std::vector<double>{1, 0, 0, 1}));
}
