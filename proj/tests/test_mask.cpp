#include "erel/mask.hpp"

#include <random>

#include <gtest/gtest.h>

#include "erel/errors.hpp"
#include "oracles.hpp"

using namespace erel;

TEST(Mask, RasterizeSetsListedPixels) {
  const RegionCoords coords{{0, 0}, {1, 1}, {2, 2}};
  const BinaryMask m = rasterize(coords, 3, 3);
  EXPECT_EQ(m.area(), 3u);
  EXPECT_TRUE(m.test(0, 0));
  EXPECT_TRUE(m.test(1, 1));
  EXPECT_TRUE(m.test(2, 2));
  EXPECT_FALSE(m.test(0, 1));
  EXPECT_FALSE(m.test(2, 0));
}

TEST(Mask, RasterizeCollapsesDuplicates) {
  const BinaryMask m = rasterize({{1, 1}, {1, 1}, {1, 1}}, 3, 3);
  EXPECT_EQ(m.area(), 1u);
}

TEST(Mask, RasterizeRejectsOutOfBounds) {
  try {
    rasterize({{5, 0}}, 3, 3);
    FAIL() << "expected input_error";
  } catch (const input_error& e) {
    EXPECT_NE(std::string(e.what()).find("(5, 0)"), std::string::npos);
  }
}

TEST(Mask, RasterizeRejectsBadCanvas) {
  EXPECT_THROW(rasterize({}, 0, 3), input_error);
  EXPECT_THROW(rasterize({}, 3, -1), input_error);
}

TEST(Mask, SetAlgebraHandValues) {
  const BinaryMask a = rasterize({{0, 0}, {0, 1}}, 3, 3);
  const BinaryMask b = rasterize({{0, 1}, {2, 2}}, 3, 3);
  const BinaryMask i = intersect(a, b);
  const BinaryMask u = unite(a, b);
  EXPECT_EQ(i.area(), 1u);
  EXPECT_TRUE(i.test(0, 1));
  EXPECT_EQ(u.area(), 3u);
  EXPECT_TRUE(u.test(0, 0));
  EXPECT_TRUE(u.test(0, 1));
  EXPECT_TRUE(u.test(2, 2));
}

TEST(Mask, SetAlgebraRejectsCanvasMismatch) {
  const BinaryMask a(3, 3);
  const BinaryMask b(4, 3);
  EXPECT_THROW(intersect(a, b), input_error);
  EXPECT_THROW(unite(a, b), input_error);
  EXPECT_THROW(is_subset(a, b), input_error);
}

TEST(Mask, InclusionExclusionHolds) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 50; ++iter) {
    const BinaryMask a = oracle::random_mask(rng, 16, 16, 0.3);
    const BinaryMask b = oracle::random_mask(rng, 16, 16, 0.5);
    EXPECT_EQ(intersect(a, b).area() + unite(a, b).area(), a.area() + b.area());
  }
}

TEST(Mask, SubsetRelation) {
  const BinaryMask a = rasterize({{1, 1}}, 4, 4);
  const BinaryMask b = rasterize({{1, 1}, {2, 2}}, 4, 4);
  EXPECT_TRUE(is_subset(a, b));
  EXPECT_FALSE(is_subset(b, a));
  EXPECT_TRUE(is_subset(a, a));
  EXPECT_TRUE(is_subset(BinaryMask(4, 4), a));
}

TEST(Mask, CoordsRoundTrip) {
  std::mt19937_64 rng(12);
  const BinaryMask m = oracle::random_mask(rng, 20, 9, 0.4);
  EXPECT_EQ(rasterize(m.coords(), 20, 9), m);
}

TEST(Mask, RowSpanCrossesWordBoundaries) {
  BinaryMask m(100, 2);
  m.set_row_span(1, 50, 90);
  EXPECT_EQ(m.area(), 41u);
  for (int c = 0; c < 100; ++c) {
    EXPECT_EQ(m.test(1, c), c >= 50 && c <= 90) << "col " << c;
    EXPECT_FALSE(m.test(0, c));
  }
}

TEST(Mask, EqualityComparesCanvasAndBits) {
  BinaryMask a(5, 5);
  BinaryMask b(5, 5);
  EXPECT_EQ(a, b);
  a.set(3, 3);
  EXPECT_NE(a, b);
  b.set(3, 3);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, BinaryMask(5, 6));
}

TEST(Mask, FrameImageValidation) {
  EXPECT_THROW(FrameImage(2, 2, std::vector<std::uint8_t>{1, 2, 3}), input_error);
  FrameImage img(2, 2, std::vector<std::uint8_t>{1, 2, 3, 4});
  EXPECT_EQ(img.at(1, 0), 3);
  EXPECT_THROW(img.at(2, 0), input_error);
  EXPECT_THROW(img.at(0, -1), input_error);
}

TEST(Mask, ExtractGrayKeepsMemberIntensitiesOnly) {
  FrameImage img(3, 3);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) img.at(r, c) = static_cast<std::uint8_t>(10 * (3 * r + c + 1));
  }
  const GrayMask g = extract_gray({{0, 0}, {2, 2}}, img);
  EXPECT_EQ(g.intensity(0, 0), 10);
  EXPECT_EQ(g.intensity(2, 2), 90);
  EXPECT_EQ(g.intensity(1, 1), 0);
  EXPECT_EQ(g.mask().area(), 2u);
  EXPECT_DOUBLE_EQ(mean_intensity(g), 50.0);
}

TEST(Mask, MeanIntensityOfSinglePixelIsItsValue) {
  FrameImage img(2, 2);
  img.at(0, 1) = 77;
  EXPECT_DOUBLE_EQ(mean_intensity(extract_gray({{0, 1}}, img)), 77.0);
}

TEST(Mask, MeanIntensityRejectsEmptyRegion) {
  GrayMask g(BinaryMask(2, 2), std::vector<std::uint8_t>(4, 0));
  EXPECT_THROW(mean_intensity(g), degenerate_error);
}

TEST(Mask, WordTailStaysClean) {
  // 9x7 = 63 bits leaves one spare bit in the single word.
  BinaryMask m(9, 7);
  m.set(6, 8);
  EXPECT_EQ(m.area(), 1u);
  const BinaryMask u = unite(m, BinaryMask(9, 7));
  EXPECT_EQ(u, m);
  EXPECT_EQ(intersect(m, m), m);
}
