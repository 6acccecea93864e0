#pragma once

#include <string>
#include <vector>

#include "erel/mask.hpp"

namespace erel {

/// How candidate regions are rendered for the correlation pass.
enum class CorrMode { binary, gray };

std::string to_string(CorrMode m);

/// Strict parse; unknown names raise input_error.
CorrMode corr_mode_from_string(const std::string& s);

struct CorrelationScore {
  int erel_index = 0;
  double r = 0.0;
};

struct CompactnessScore {
  int erel_index = 0;
  double m1 = 0.0;
  double m2 = 0.0;
  double total = 0.0;
};

/// Member pixels of `last` whose intensity falls strictly below the region
/// mean. This approximates the lumen inside the largest extremal region.
/// Throws degenerate_error when the region is empty or nothing falls below
/// the mean (uniform intensity).
BinaryMask approximate_lumen(const GrayMask& last);

/// Pearson correlation of two equally sized images flattened to vectors.
/// Throws degenerate_error when either image is constant.
double corr2(const std::vector<double>& a, const std::vector<double>& b);

/// Correlation of two masks rendered as 0/1 images on the same canvas.
double corr2(const BinaryMask& a, const BinaryMask& b);

/// Full-canvas rendering: 1.0 at members (binary) or the member intensity
/// (gray), 0.0 elsewhere.
std::vector<double> to_image(const BinaryMask& m);
std::vector<double> to_image(const GrayMask& g);

/// Indices whose correlation is at least the mean correlation. The mean
/// comparison carries a small relative guard band so a flat score vector
/// keeps every index.
std::vector<int> pass1_filter(const std::vector<CorrelationScore>& scores);

/// Overlap ratios of a dilated region against its fitted ellipse mask:
/// m1 = |region & ellipse| / |ellipse|, m2 = |region & ellipse| / |region|.
/// Throws degenerate_error when either mask is empty.
CompactnessScore compactness(const BinaryMask& region_dilated,
                             const BinaryMask& ellipse_mask, int erel_index = 0);

} // namespace erel
