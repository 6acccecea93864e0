#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "erel/ellipse.hpp"
#include "erel/mask.hpp"
#include "erel/selection.hpp"

namespace erel {

/// Symmetric Hausdorff distance between two point sets, scaled by the pixel
/// spacing (physical units per pixel).
double hausdorff(std::span<const ContourPoint> a, std::span<const ContourPoint> b,
                 double spacing = 1.0);

/// Jaccard index |a & b| / |a | b|. Undefined (degenerate_error) when both
/// masks are empty.
double jaccard(const BinaryMask& a, const BinaryMask& b);

/// Pixels whose centers are inside a closed polygon, by even-odd scanline
/// rule. The polygon closes implicitly from the last vertex to the first.
BinaryMask fill_contour(std::span<const ContourPoint> contour, int width,
                        int height);

/// Per-frame scores of both the pipeline's choice and the best achievable
/// region. Distances carry the pixel spacing; overlaps are unitless.
struct FrameEvaluation {
  std::string frame_id;
  Category category = Category::general;
  int chosen_index = -1;
  int gold_index = -1;
  double hd = 0.0;
  double jm = 0.0;
  double gold_hd = 0.0;
  double gold_jm = 0.0;
};

FrameEvaluation evaluate_frame(const FrameSample& sample,
                               const SelectionResult& result,
                               const PipelineConfig& cfg, double spacing = 1.0);

enum class StdMode { population, sample };

std::string to_string(StdMode m);

/// Strict parse; unknown names raise input_error.
StdMode std_mode_from_string(const std::string& s);

struct MetricStats {
  double hd_mean = 0.0;
  double hd_std = 0.0;
  double jm_mean = 0.0;
  double jm_std = 0.0;
};

struct CategoryStats {
  std::size_t n = 0;
  MetricStats gold;
  MetricStats proposed;
};

/// Aggregated scores: one row over every frame plus one row per artifact
/// label present. label_counts covers all five labels and sums to the frame
/// count.
struct AggregateReport {
  CategoryStats overall;
  std::map<Category, CategoryStats> per_category;
  std::map<Category, std::size_t> label_counts;
  StdMode std_mode = StdMode::population;
};

AggregateReport aggregate(const std::vector<FrameEvaluation>& evals,
                          StdMode mode = StdMode::population);

} // namespace erel
