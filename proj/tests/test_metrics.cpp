#include "erel/metrics.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "erel/errors.hpp"
#include "erel/synth.hpp"

using namespace erel;

namespace {

std::vector<ContourPoint> random_contour(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> coord(0, 20);
  std::vector<ContourPoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
  return pts;
}

BinaryMask row_span_mask(int col_first, int col_last) {
  BinaryMask m(12, 4);
  m.set_row_span(0, col_first, col_last);
  return m;
}

} // namespace

TEST(Metrics, HausdorffOfTwoPointsIsTheirDistance) {
  const std::vector<ContourPoint> a{{0, 0}};
  const std::vector<ContourPoint> b{{3, 4}};
  EXPECT_DOUBLE_EQ(hausdorff(a, b), 5.0);
  EXPECT_DOUBLE_EQ(hausdorff(a, b, 0.5), 2.5);
}

TEST(Metrics, HausdorffIsTheWorseDirectedDistance) {
  // Every point of `a` sits on `b`, yet the far member of `b` dominates.
  const std::vector<ContourPoint> a{{0, 0}};
  const std::vector<ContourPoint> b{{0, 0}, {10, 0}};
  EXPECT_DOUBLE_EQ(hausdorff(a, b), 10.0);
  EXPECT_DOUBLE_EQ(hausdorff(b, a), 10.0);
}

TEST(Metrics, HausdorffAxioms) {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 50; ++iter) {
    const auto a = random_contour(rng, 5 + static_cast<int>(rng() % 11));
    const auto b = random_contour(rng, 5 + static_cast<int>(rng() % 11));
    const auto c = random_contour(rng, 5 + static_cast<int>(rng() % 11));
    EXPECT_DOUBLE_EQ(hausdorff(a, a), 0.0);
    const double ab = hausdorff(a, b);
    EXPECT_GE(ab, 0.0);
    EXPECT_DOUBLE_EQ(ab, hausdorff(b, a));
    EXPECT_LE(hausdorff(a, c), ab + hausdorff(b, c) + 1e-9);
  }
}

TEST(Metrics, HausdorffRejectsBadInput) {
  const std::vector<ContourPoint> a{{0, 0}};
  const std::vector<ContourPoint> empty;
  EXPECT_THROW(hausdorff(a, empty), input_error);
  EXPECT_THROW(hausdorff(empty, a), input_error);
  EXPECT_THROW(hausdorff(a, a, 0.0), input_error);
  EXPECT_THROW(hausdorff(a, a, -1.0), input_error);
}

TEST(Metrics, JaccardHandValue) {
  // Spans 0..6 and 3..9: four shared pixels over a ten pixel union.
  EXPECT_DOUBLE_EQ(jaccard(row_span_mask(0, 6), row_span_mask(3, 9)), 0.4);
}

TEST(Metrics, JaccardEndpoints) {
  const BinaryMask a = row_span_mask(0, 3);
  EXPECT_DOUBLE_EQ(jaccard(a, a), 1.0);
  EXPECT_DOUBLE_EQ(jaccard(a, row_span_mask(5, 8)), 0.0);
  BinaryMask empty(12, 4);
  EXPECT_THROW(jaccard(empty, empty), degenerate_error);
  EXPECT_THROW(jaccard(a, BinaryMask(4, 4)), input_error);
}

TEST(Metrics, FillContourSquare) {
  const std::vector<ContourPoint> square{
      {0.5, 0.5}, {3.5, 0.5}, {3.5, 3.5}, {0.5, 3.5}};
  const BinaryMask filled = fill_contour(square, 6, 6);
  EXPECT_EQ(filled.area(), 9u);
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) EXPECT_TRUE(filled.test(r, c));
}

TEST(Metrics, FillContourNeedsThreeVertices) {
  const std::vector<ContourPoint> segment{{0, 0}, {5, 5}};
  EXPECT_THROW(fill_contour(segment, 8, 8), input_error);
}

TEST(Metrics, FilledEllipseContourMatchesDirectRaster) {
  const Ellipse e{24, 20, 14, 9, 0.7};
  const BinaryMask filled = fill_contour(ellipse_contour(e, 720), 48, 48);
  const BinaryMask direct = rasterize_ellipse(e, 48, 48);
  EXPECT_GE(jaccard(filled, direct), 0.98);
}

TEST(Metrics, EvaluatePerfectSelectionScoresZeroAndOne) {
  const Ellipse e{40, 44, 20, 14, 0.3};
  FrameSample sample;
  sample.id = "perfect";
  sample.category = Category::side_vessels;
  sample.frame = FrameImage(96, 96, 100);
  sample.erels.push_back(rasterize_ellipse(e, 96, 96).coords());
  const PipelineConfig cfg;
  sample.ground_truth = ellipse_contour(e, cfg.contour_samples);

  SelectionResult res;
  res.chosen_index = 0;
  res.chosen_ellipse = e;
  const FrameEvaluation ev = evaluate_frame(sample, res, cfg);

  EXPECT_EQ(ev.frame_id, "perfect");
  EXPECT_EQ(ev.category, Category::side_vessels);
  EXPECT_EQ(ev.chosen_index, 0);
  EXPECT_EQ(ev.gold_index, 0);
  EXPECT_DOUBLE_EQ(ev.hd, 0.0);
  EXPECT_DOUBLE_EQ(ev.jm, 1.0);
}

TEST(Metrics, GoldScoreNeverExceedsTheChosenScore) {
  for (std::uint64_t seed = 50; seed < 56; ++seed) {
    const SynthFrame synth =
        generate_synthetic(random_synth_spec(seed, ArtifactType::bifurcation_notch));
    const PipelineConfig cfg;
    const SelectionResult res = select(synth.sample, cfg);
    const FrameEvaluation ev = evaluate_frame(synth.sample, res, cfg, 0.026);
    EXPECT_LE(ev.gold_hd, ev.hd + 1e-12) << "seed " << seed;
    EXPECT_GE(ev.jm, 0.0);
    EXPECT_LE(ev.jm, 1.0);
  }
}

TEST(Metrics, EvaluateRequiresGroundTruth) {
  SynthFrame synth = generate_synthetic(random_synth_spec(57, ArtifactType::none));
  const SelectionResult res = select(synth.sample, PipelineConfig{});
  synth.sample.ground_truth.reset();
  EXPECT_THROW(evaluate_frame(synth.sample, res, PipelineConfig{}), input_error);
}

TEST(Metrics, AggregateTwoFrames) {
  FrameEvaluation a;
  a.frame_id = "a";
  a.category = Category::bifurcation;
  a.hd = 0.2;
  a.jm = 0.8;
  a.gold_hd = 0.1;
  a.gold_jm = 0.9;
  FrameEvaluation b;
  b.frame_id = "b";
  b.category = Category::shadow;
  b.hd = 0.4;
  b.jm = 0.6;
  b.gold_hd = 0.3;
  b.gold_jm = 0.7;

  const AggregateReport pop = aggregate({a, b}, StdMode::population);
  EXPECT_EQ(pop.overall.n, 2u);
  EXPECT_NEAR(pop.overall.proposed.hd_mean, 0.3, 1e-12);
  EXPECT_NEAR(pop.overall.proposed.hd_std, 0.1, 1e-12);
  EXPECT_NEAR(pop.overall.proposed.jm_mean, 0.7, 1e-12);
  EXPECT_NEAR(pop.overall.gold.hd_mean, 0.2, 1e-12);
  EXPECT_NEAR(pop.overall.gold.jm_std, 0.1, 1e-12);

  const AggregateReport smp = aggregate({a, b}, StdMode::sample);
  EXPECT_NEAR(smp.overall.proposed.hd_std, std::sqrt(0.02), 1e-12);
  EXPECT_EQ(smp.std_mode, StdMode::sample);

  ASSERT_EQ(pop.per_category.size(), 2u);
  EXPECT_EQ(pop.per_category.at(Category::bifurcation).n, 1u);
  EXPECT_DOUBLE_EQ(pop.per_category.at(Category::bifurcation).proposed.hd_mean, 0.2);
  EXPECT_DOUBLE_EQ(pop.per_category.at(Category::bifurcation).proposed.hd_std, 0.0);

  std::size_t labelled = 0;
  ASSERT_EQ(pop.label_counts.size(), 5u);
  for (const auto& [label, count] : pop.label_counts) labelled += count;
  EXPECT_EQ(labelled, 2u);
}

TEST(Metrics, AggregateKeepsGeneralOutOfCategoryRows) {
  FrameEvaluation a;
  a.frame_id = "a";
  a.category = Category::general;
  a.hd = 1.0;
  a.jm = 0.5;
  const AggregateReport rep = aggregate({a});
  EXPECT_TRUE(rep.per_category.empty());
  EXPECT_EQ(rep.label_counts.at(Category::general), 1u);
  EXPECT_DOUBLE_EQ(rep.overall.proposed.hd_std, 0.0); // single frame
}

TEST(Metrics, AggregateRejectsEmptyInput) {
  EXPECT_THROW(aggregate({}), input_error);
}

TEST(Metrics, StdModeNamesRoundTrip) {
  EXPECT_EQ(std_mode_from_string(to_string(StdMode::population)), StdMode::population);
  EXPECT_EQ(std_mode_from_string(to_string(StdMode::sample)), StdMode::sample);
  EXPECT_THROW(std_mode_from_string("stddev"), input_error);
}
