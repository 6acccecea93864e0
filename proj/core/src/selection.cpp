#include "erel/selection.hpp"

#include <algorithm>
#include <limits>

#include "erel/errors.hpp"
#include "erel/metrics.hpp"
#include "erel/morphology.hpp"

namespace erel {

std::string to_string(Category c) {
  switch (c) {
    case Category::no_artifact: return "no_artifact";
    case Category::bifurcation: return "bifurcation";
    case Category::side_vessels: return "side_vessels";
    case Category::shadow: return "shadow";
    case Category::general: break;
  }
  return "general";
}

Category category_from_string(const std::string& s) {
  if (s == "no_artifact") return Category::no_artifact;
  if (s == "bifurcation") return Category::bifurcation;
  if (s == "side_vessels") return Category::side_vessels;
  if (s == "shadow") return Category::shadow;
  return Category::general;
}

std::vector<int> local_maxima(const std::vector<double>& values) {
  std::vector<int> out;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] > values[i - 1] && values[i] > values[i + 1]) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

int pick_by_compactness(const std::vector<double>& totals, int k_maxima) {
  if (totals.empty()) throw input_error("pick_by_compactness: no scores");
  if (k_maxima < 1) throw input_error("pick_by_compactness: k_maxima must be >= 1");
  std::vector<int> candidates = local_maxima(totals);
  if (candidates.size() > static_cast<std::size_t>(k_maxima)) {
    candidates.resize(static_cast<std::size_t>(k_maxima));
  }
  if (candidates.empty()) {
    // Monotone or flat profiles have no interior peak; take the global best.
    int best = 0;
    for (std::size_t i = 1; i < totals.size(); ++i) {
      if (totals[i] > totals[best]) best = static_cast<int>(i);
    }
    return best;
  }
  int best = candidates[0];
  for (int i : candidates) {
    if (totals[i] > totals[best]) best = i;
  }
  return best;
}

Ellipse fit_region_ellipse(const BinaryMask& dilated) {
  try {
    return fit_ellipse(boundary_pixels(dilated));
  } catch (const fit_error&) {
    return moment_ellipse(dilated);
  }
}

Ellipse region_ellipse(const BinaryMask& region, const PipelineConfig& cfg) {
  return fit_region_ellipse(dilate(region, disk(cfg.dilate_radius)));
}

namespace {

/// Gray rendering of the lumen estimate: member intensities of `last`
/// restricted to the estimate's pixels.
std::vector<double> gray_lumen_image(const BinaryMask& lumen, const GrayMask& last) {
  std::vector<double> img(static_cast<std::size_t>(lumen.width()) * lumen.height(),
                          0.0);
  std::size_t i = 0;
  for (int r = 0; r < lumen.height(); ++r) {
    for (int c = 0; c < lumen.width(); ++c, ++i) {
      if (lumen.test(r, c)) img[i] = static_cast<double>(last.intensity(r, c));
    }
  }
  return img;
}

} // namespace

SelectionResult select(const FrameSample& sample, const PipelineConfig& cfg) {
  if (sample.erels.empty()) {
    throw input_error("select: frame '" + sample.id + "' has no regions");
  }
  if (cfg.dilate_radius < 0 || cfg.k_maxima < 1 || cfg.contour_samples < 8) {
    throw input_error("select: invalid pipeline configuration");
  }

  std::vector<GrayMask> grays;
  grays.reserve(sample.erels.size());
  for (const RegionCoords& coords : sample.erels) {
    grays.push_back(extract_gray(coords, sample.frame));
  }

  SelectionResult result;

  // Pass 1: correlate every region against the approximate lumen extracted
  // from the largest region. Any degeneracy (nothing below the mean, constant
  // rendering, no positive correlation) disables the filter for this frame.
  try {
    const BinaryMask lumen = approximate_lumen(grays.back());
    const std::vector<double> reference = cfg.corr_mode == CorrMode::binary
                                              ? to_image(lumen)
                                              : gray_lumen_image(lumen, grays.back());
    for (std::size_t i = 0; i < grays.size(); ++i) {
      const std::vector<double> candidate = cfg.corr_mode == CorrMode::binary
                                                ? to_image(grays[i].mask())
                                                : to_image(grays[i]);
      double r;
      try {
        r = corr2(candidate, reference);
      } catch (const degenerate_error&) {
        r = -1.0; // constant rendering cannot match the lumen
      }
      result.correlation_trace.push_back({static_cast<int>(i), r});
    }
    double max_r = -std::numeric_limits<double>::infinity();
    for (const CorrelationScore& s : result.correlation_trace) {
      max_r = std::max(max_r, s.r);
    }
    if (max_r <= 0) {
      result.fallback_used = true;
    } else {
      result.pass1_survivors = pass1_filter(result.correlation_trace);
    }
  } catch (const degenerate_error&) {
    result.fallback_used = true;
  }
  if (result.fallback_used) {
    result.pass1_survivors.resize(sample.erels.size());
    for (std::size_t i = 0; i < sample.erels.size(); ++i) {
      result.pass1_survivors[i] = static_cast<int>(i);
    }
  }

  // Pass 2: compactness of each survivor against its own fitted ellipse.
  const StructuringElement se = disk(cfg.dilate_radius);
  std::vector<Ellipse> ellipses;
  std::vector<double> totals;
  for (int idx : result.pass1_survivors) {
    const BinaryMask dilated =
        dilate(grays[static_cast<std::size_t>(idx)].mask(), se);
    const Ellipse e = fit_region_ellipse(dilated);
    const BinaryMask raster =
        rasterize_ellipse(e, sample.frame.width(), sample.frame.height());
    CompactnessScore score;
    score.erel_index = idx;
    if (!raster.empty() && !dilated.empty()) {
      score = compactness(dilated, raster, idx);
    }
    result.compactness_trace.push_back(score);
    ellipses.push_back(e);
    totals.push_back(score.total);
  }

  const int pos = pick_by_compactness(totals, cfg.k_maxima);
  result.chosen_index = result.pass1_survivors[static_cast<std::size_t>(pos)];
  result.chosen_ellipse = ellipses[static_cast<std::size_t>(pos)];
  return result;
}

GoldStandard gold_standard(const FrameSample& sample, const PipelineConfig& cfg) {
  if (!sample.ground_truth) {
    throw input_error("gold_standard: frame '" + sample.id +
                      "' has no ground truth contour");
  }
  if (sample.erels.empty()) {
    throw input_error("gold_standard: frame '" + sample.id + "' has no regions");
  }
  GoldStandard best;
  best.hd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sample.erels.size(); ++i) {
    const BinaryMask mask =
        rasterize(sample.erels[i], sample.frame.width(), sample.frame.height());
    const Ellipse e = region_ellipse(mask, cfg);
    const std::vector<ContourPoint> contour =
        ellipse_contour(e, cfg.contour_samples);
    const double hd = hausdorff(contour, *sample.ground_truth, 1.0);
    if (hd < best.hd) {
      best.index = static_cast<int>(i);
      best.hd = hd;
      best.ellipse = e;
    }
  }
  return best;
}

int gold_standard_index(const FrameSample& sample, const PipelineConfig& cfg) {
  return gold_standard(sample, cfg).index;
}

} // namespace erel
