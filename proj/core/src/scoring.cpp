#include "erel/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "erel/errors.hpp"

namespace erel {

std::string to_string(CorrMode m) {
  return m == CorrMode::gray ? "gray" : "binary";
}

CorrMode corr_mode_from_string(const std::string& s) {
  if (s == "binary") return CorrMode::binary;
  if (s == "gray") return CorrMode::gray;
  throw input_error("unknown correlation mode '" + s + "'");
}

BinaryMask approximate_lumen(const GrayMask& last) {
  const double mean = mean_intensity(last); // rejects empty regions
  BinaryMask out(last.width(), last.height());
  std::size_t kept = 0;
  for (int r = 0; r < last.height(); ++r) {
    for (int c = 0; c < last.width(); ++c) {
      if (!last.mask().test(r, c)) continue;
      if (static_cast<double>(last.intensity(r, c)) < mean) {
        out.set(r, c);
        ++kept;
      }
    }
  }
  if (kept == 0) {
    throw degenerate_error(
        "approximate_lumen: no pixel falls below the region mean");
  }
  return out;
}

double corr2(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw input_error("corr2: operand sizes differ, " + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()));
  }
  if (a.empty()) throw degenerate_error("corr2: empty images");
  const auto [a_lo, a_hi] = std::minmax_element(a.begin(), a.end());
  const auto [b_lo, b_hi] = std::minmax_element(b.begin(), b.end());
  if (*a_lo == *a_hi || *b_lo == *b_hi) {
    throw degenerate_error("corr2: constant image has undefined correlation");
  }
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  return sab / std::sqrt(saa * sbb);
}

double corr2(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw input_error("corr2: canvas mismatch");
  }
  return corr2(to_image(a), to_image(b));
}

std::vector<double> to_image(const BinaryMask& m) {
  std::vector<double> img(static_cast<std::size_t>(m.width()) * m.height(), 0.0);
  std::size_t i = 0;
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c, ++i) {
      if (m.test(r, c)) img[i] = 1.0;
    }
  }
  return img;
}

std::vector<double> to_image(const GrayMask& g) {
  std::vector<double> img;
  img.reserve(g.intensities().size());
  for (std::uint8_t v : g.intensities()) img.push_back(static_cast<double>(v));
  return img;
}

std::vector<int> pass1_filter(const std::vector<CorrelationScore>& scores) {
  if (scores.empty()) throw input_error("pass1_filter: no scores");
  double mean = 0;
  for (const CorrelationScore& s : scores) mean += s.r;
  mean /= static_cast<double>(scores.size());
  // Guard band absorbs the rounding of the mean itself, so that score vectors
  // with every value equal keep every index (max >= true mean always holds).
  const double cutoff = mean - 1e-12 * std::max(1.0, std::abs(mean));
  std::vector<int> kept;
  for (const CorrelationScore& s : scores) {
    if (s.r >= cutoff) kept.push_back(s.erel_index);
  }
  return kept;
}

CompactnessScore compactness(const BinaryMask& region_dilated,
                             const BinaryMask& ellipse_mask, int erel_index) {
  const std::size_t region_area = region_dilated.area();
  const std::size_t ellipse_area = ellipse_mask.area();
  if (region_area == 0 || ellipse_area == 0) {
    throw degenerate_error("compactness: empty operand");
  }
  const std::size_t overlap = intersect(region_dilated, ellipse_mask).area();
  CompactnessScore s;
  s.erel_index = erel_index;
  s.m1 = static_cast<double>(overlap) / static_cast<double>(ellipse_area);
  s.m2 = static_cast<double>(overlap) / static_cast<double>(region_area);
  s.total = s.m1 + s.m2;
  return s;
}

} // namespace erel
