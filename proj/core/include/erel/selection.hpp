#pragma once

#include <optional>
#include <string>
#include <vector>

#include "erel/ellipse.hpp"
#include "erel/mask.hpp"
#include "erel/scoring.hpp"

namespace erel {

/// Frame annotation for reporting. `general` doubles as "unlabelled"; the
/// four artifact labels form report subsets.
enum class Category { general, no_artifact, bifurcation, side_vessels, shadow };

std::string to_string(Category c);

/// Parses a category label; unknown labels fall back to `general`.
Category category_from_string(const std::string& s);

/// One frame with its extremal region series in detector order (increasing
/// regions, the last being the largest).
struct FrameSample {
  std::string id;
  FrameImage frame{1, 1};
  std::vector<RegionCoords> erels;
  std::optional<std::vector<ContourPoint>> ground_truth;
  Category category = Category::general;
};

struct PipelineConfig {
  int dilate_radius = 6;
  int k_maxima = 2;
  CorrMode corr_mode = CorrMode::binary;
  int contour_samples = 360;
};

struct SelectionResult {
  int chosen_index = -1;
  Ellipse chosen_ellipse;
  std::vector<CorrelationScore> correlation_trace;
  std::vector<CompactnessScore> compactness_trace;
  std::vector<int> pass1_survivors;
  /// Set when the correlation pass could not discriminate (lumen extraction
  /// failed or no positive correlation); every region then enters pass 2.
  bool fallback_used = false;
};

/// Indices of strict interior local maxima; endpoints never qualify.
std::vector<int> local_maxima(const std::vector<double>& values);

/// Position of the winning value: the best of the first `k_maxima` local
/// maxima, or the global maximum when no interior maximum exists. Ties keep
/// the earliest position.
int pick_by_compactness(const std::vector<double>& totals, int k_maxima);

/// Ellipse summarizing a region: dilate, trace the boundary, fit. Falls back
/// to the moment ellipse when the conic fit rejects the boundary.
Ellipse region_ellipse(const BinaryMask& region, const PipelineConfig& cfg);

/// Same, for a region that has already been dilated.
Ellipse fit_region_ellipse(const BinaryMask& dilated);

/// Two-pass selection over the frame's region series: correlation filtering
/// against the approximate lumen, then compactness ranking of the survivors.
SelectionResult select(const FrameSample& sample, const PipelineConfig& cfg);

/// Best achievable region under the Hausdorff metric.
struct GoldStandard {
  int index = -1;
  double hd = 0.0; // pixel units
  Ellipse ellipse;
};

/// Scans every region, fits its ellipse and keeps the one whose contour is
/// closest to the ground truth; ties keep the lower index. Requires ground
/// truth on the sample.
GoldStandard gold_standard(const FrameSample& sample, const PipelineConfig& cfg);

int gold_standard_index(const FrameSample& sample, const PipelineConfig& cfg);

} // namespace erel
