#include "erel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "erel/errors.hpp"

namespace erel {
namespace {

double directed_hausdorff(std::span<const ContourPoint> from,
                          std::span<const ContourPoint> to) {
  double worst = 0.0;
  for (const ContourPoint& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const ContourPoint& q : to) {
      const double dx = p.x - q.x;
      const double dy = p.y - q.y;
      best = std::min(best, dx * dx + dy * dy);
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v, double mean, StdMode mode) {
  if (v.size() < 2) return 0.0;
  double s = 0;
  for (double x : v) s += (x - mean) * (x - mean);
  const double denom = mode == StdMode::population
                           ? static_cast<double>(v.size())
                           : static_cast<double>(v.size() - 1);
  return std::sqrt(s / denom);
}

CategoryStats stats_over(const std::vector<const FrameEvaluation*>& group,
                         StdMode mode) {
  CategoryStats out;
  out.n = group.size();
  std::vector<double> hd, jm, ghd, gjm;
  hd.reserve(group.size());
  jm.reserve(group.size());
  ghd.reserve(group.size());
  gjm.reserve(group.size());
  for (const FrameEvaluation* e : group) {
    hd.push_back(e->hd);
    jm.push_back(e->jm);
    ghd.push_back(e->gold_hd);
    gjm.push_back(e->gold_jm);
  }
  out.proposed.hd_mean = mean_of(hd);
  out.proposed.hd_std = std_of(hd, out.proposed.hd_mean, mode);
  out.proposed.jm_mean = mean_of(jm);
  out.proposed.jm_std = std_of(jm, out.proposed.jm_mean, mode);
  out.gold.hd_mean = mean_of(ghd);
  out.gold.hd_std = std_of(ghd, out.gold.hd_mean, mode);
  out.gold.jm_mean = mean_of(gjm);
  out.gold.jm_std = std_of(gjm, out.gold.jm_mean, mode);
  return out;
}

} // namespace

std::string to_string(StdMode m) {
  return m == StdMode::sample ? "sample" : "population";
}

StdMode std_mode_from_string(const std::string& s) {
  if (s == "population") return StdMode::population;
  if (s == "sample") return StdMode::sample;
  throw input_error("unknown std mode '" + s + "'");
}

double hausdorff(std::span<const ContourPoint> a, std::span<const ContourPoint> b,
                 double spacing) {
  if (a.empty() || b.empty()) throw input_error("hausdorff: empty contour");
  if (!(spacing > 0)) throw input_error("hausdorff: spacing must be positive");
  return spacing * std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double jaccard(const BinaryMask& a, const BinaryMask& b) {
  const std::size_t u = unite(a, b).area(); // also validates the canvases
  if (u == 0) {
    throw degenerate_error("jaccard: undefined for two empty masks");
  }
  const std::size_t i = intersect(a, b).area();
  return static_cast<double>(i) / static_cast<double>(u);
}

BinaryMask fill_contour(std::span<const ContourPoint> contour, int width,
                        int height) {
  if (contour.size() < 3) {
    throw input_error("fill_contour: polygon needs at least 3 vertices");
  }
  BinaryMask out(width, height);
  const std::size_t n = contour.size();
  std::vector<double> crossings;
  for (int r = 0; r < height; ++r) {
    const double y = static_cast<double>(r);
    crossings.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const ContourPoint& p = contour[i];
      const ContourPoint& q = contour[(i + 1) % n];
      if (p.y == q.y) continue; // horizontal edges contribute no crossing
      // Half-open span [min, max) keeps shared vertices from double counting.
      const double y_lo = std::min(p.y, q.y);
      const double y_hi = std::max(p.y, q.y);
      if (y < y_lo || y >= y_hi) continue;
      crossings.push_back(p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y));
    }
    std::sort(crossings.begin(), crossings.end());
    for (std::size_t i = 0; i + 1 < crossings.size(); i += 2) {
      const int c0 = std::max(0, static_cast<int>(std::ceil(crossings[i])));
      const int c1 =
          std::min(width - 1, static_cast<int>(std::floor(crossings[i + 1])));
      if (c0 <= c1) out.set_row_span(r, c0, c1);
    }
  }
  return out;
}

FrameEvaluation evaluate_frame(const FrameSample& sample,
                               const SelectionResult& result,
                               const PipelineConfig& cfg, double spacing) {
  if (!sample.ground_truth) {
    throw input_error("evaluate_frame: frame '" + sample.id +
                      "' has no ground truth contour");
  }
  if (!(spacing > 0)) throw input_error("evaluate_frame: spacing must be positive");

  FrameEvaluation ev;
  ev.frame_id = sample.id;
  ev.category = sample.category;
  ev.chosen_index = result.chosen_index;

  const std::vector<ContourPoint> chosen_contour =
      ellipse_contour(result.chosen_ellipse, cfg.contour_samples);
  ev.hd = hausdorff(chosen_contour, *sample.ground_truth, spacing);

  const BinaryMask truth = fill_contour(*sample.ground_truth,
                                        sample.frame.width(),
                                        sample.frame.height());
  const BinaryMask chosen_mask = rasterize_ellipse(
      result.chosen_ellipse, sample.frame.width(), sample.frame.height());
  ev.jm = jaccard(chosen_mask, truth);

  const GoldStandard gold = gold_standard(sample, cfg);
  ev.gold_index = gold.index;
  ev.gold_hd = gold.hd * spacing;
  const BinaryMask gold_mask = rasterize_ellipse(
      gold.ellipse, sample.frame.width(), sample.frame.height());
  ev.gold_jm = jaccard(gold_mask, truth);
  return ev;
}

AggregateReport aggregate(const std::vector<FrameEvaluation>& evals,
                          StdMode mode) {
  if (evals.empty()) throw input_error("aggregate: no frame evaluations");
  AggregateReport report;
  report.std_mode = mode;
  for (Category c : {Category::general, Category::no_artifact,
                     Category::bifurcation, Category::side_vessels,
                     Category::shadow}) {
    report.label_counts[c] = 0;
  }
  std::vector<const FrameEvaluation*> all;
  std::map<Category, std::vector<const FrameEvaluation*>> groups;
  for (const FrameEvaluation& e : evals) {
    all.push_back(&e);
    ++report.label_counts[e.category];
    if (e.category != Category::general) groups[e.category].push_back(&e);
  }
  report.overall = stats_over(all, mode);
  for (const auto& [cat, group] : groups) {
    report.per_category[cat] = stats_over(group, mode);
  }
  return report;
}

} // namespace erel
