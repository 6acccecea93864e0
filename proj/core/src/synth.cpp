#include "erel/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "erel/errors.hpp"

namespace erel {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Radial bands of the intensity model, in units of the lumen ellipse.
constexpr double kWallOuter = 1.70;  // wall band is (1, kWallOuter]
constexpr double kLastScale = 1.55;  // largest region, inside the wall band
constexpr double kShadowInner = 0.95;
constexpr double kShadowWidth = 0.55; // radians

// Pre-lumen regions live well below the lumen scale so that no distractor's
// dilated fit can land closer to the ground truth than the lumen's own.
constexpr double kPreLo = 0.38;
constexpr double kPreHi = 0.60;
constexpr double kPostLo = 1.08;

/// Position and shape of a pixel relative to the lumen ellipse: rho is the
/// elliptical radius (1 on the contour), t the elliptical angle.
struct LumenFrame {
  double cos_t, sin_t, inv_a, inv_b, cx, cy;

  explicit LumenFrame(const Ellipse& e)
      : cos_t(std::cos(e.angle)),
        sin_t(std::sin(e.angle)),
        inv_a(1.0 / e.semi_major),
        inv_b(1.0 / e.semi_minor),
        cx(e.center_x),
        cy(e.center_y) {}

  void polar(double x, double y, double& rho, double& t) const {
    const double dx = x - cx;
    const double dy = y - cy;
    const double u = (dx * cos_t + dy * sin_t) * inv_a;
    const double v = (-dx * sin_t + dy * cos_t) * inv_b;
    rho = std::hypot(u, v);
    t = std::atan2(v, u);
  }

  ContourPoint at(double rho, double t) const {
    const double u = rho * std::cos(t) / inv_a;
    const double v = rho * std::sin(t) / inv_b;
    return {cx + u * cos_t - v * sin_t, cy + u * sin_t + v * cos_t};
  }
};

double angle_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

void check_spec(const SynthSpec& spec) {
  if (spec.width < 96 || spec.height < 96) {
    throw input_error("generate_synthetic: canvas must be at least 96x96");
  }
  if (spec.distractor_count < 3) {
    throw input_error("generate_synthetic: need at least 3 distractors");
  }
  if (!(spec.lumen.semi_major > 0) || !(spec.lumen.semi_minor > 0) ||
      spec.lumen.semi_major < spec.lumen.semi_minor) {
    throw input_error("generate_synthetic: invalid lumen ellipse");
  }
  const double margin = 3 + spec.lumen.semi_major;
  if (spec.lumen.center_x < margin || spec.lumen.center_x > spec.width - margin ||
      spec.lumen.center_y < margin || spec.lumen.center_y > spec.height - margin) {
    throw input_error("generate_synthetic: lumen does not fit inside the canvas");
  }
  if (spec.noise_amplitude < 0 || spec.noise_amplitude > 30) {
    throw input_error("generate_synthetic: noise amplitude out of range");
  }
  if (spec.lumen_level + spec.noise_amplitude >=
      spec.background_level - spec.noise_amplitude) {
    throw input_error("generate_synthetic: lumen and background bands overlap");
  }
  if (spec.background_level + spec.noise_amplitude >=
      spec.wall_level - spec.noise_amplitude) {
    throw input_error("generate_synthetic: background and wall bands overlap");
  }
}

} // namespace

std::string to_string(ArtifactType a) {
  switch (a) {
    case ArtifactType::bifurcation_notch: return "bifurcation_notch";
    case ArtifactType::shadow_sector: return "shadow_sector";
    case ArtifactType::none: break;
  }
  return "none";
}

ArtifactType artifact_from_string(const std::string& s) {
  if (s == "none") return ArtifactType::none;
  if (s == "bifurcation_notch") return ArtifactType::bifurcation_notch;
  if (s == "shadow_sector") return ArtifactType::shadow_sector;
  throw input_error("unknown artifact type '" + s + "'");
}

Category category_for(ArtifactType a) {
  switch (a) {
    case ArtifactType::bifurcation_notch: return Category::bifurcation;
    case ArtifactType::shadow_sector: return Category::shadow;
    case ArtifactType::none: break;
  }
  return Category::no_artifact;
}

SynthSpec random_synth_spec(std::uint64_t seed, ArtifactType artifact, int width,
                            int height) {
  std::mt19937_64 rng(seed);
  const double unit = std::min(width, height) / 192.0;
  SynthSpec spec;
  spec.width = width;
  spec.height = height;
  spec.artifact = artifact;
  spec.seed = seed;
  const double b = std::uniform_real_distribution<double>(38.0, 48.0)(rng) * unit;
  const double ratio = std::uniform_real_distribution<double>(1.05, 1.35)(rng);
  spec.lumen.semi_major = b * ratio;
  spec.lumen.semi_minor = b;
  spec.lumen.angle =
      std::uniform_real_distribution<double>(0.0, std::numbers::pi)(rng);
  spec.lumen.center_x =
      width / 2.0 + std::uniform_real_distribution<double>(-8.0, 8.0)(rng) * unit;
  spec.lumen.center_y =
      height / 2.0 + std::uniform_real_distribution<double>(-8.0, 8.0)(rng) * unit;
  spec.distractor_count = std::uniform_int_distribution<int>(6, 8)(rng);
  return spec;
}

SynthFrame generate_synthetic(const SynthSpec& spec) {
  check_spec(spec);
  std::mt19937_64 rng(spec.seed);
  const LumenFrame frame(spec.lumen);

  const int n = spec.distractor_count + 1;
  const int lumen_index = std::max(1, n - 5);
  const int pre_count = lumen_index;
  const int post_count = n - 1 - lumen_index;

  // Fixed directions for the shape defects, one draw each.
  const double cone_dir = std::uniform_real_distribution<double>(0, kTwoPi)(rng);
  const double blob_dir = std::uniform_real_distribution<double>(0, kTwoPi)(rng);
  const double shadow_dir = std::uniform_real_distribution<double>(0, kTwoPi)(rng);

  // Region scales: pre-lumen ascending inside [kPreLo, kPreHi], the designed
  // lumen at 1, post-lumen ascending up to kLastScale.
  std::vector<double> scales(static_cast<std::size_t>(n), 1.0);
  for (int j = 0; j < pre_count; ++j) {
    const double u = std::uniform_real_distribution<double>(0.15, 0.85)(rng);
    scales[static_cast<std::size_t>(j)] =
        kPreLo + (kPreHi - kPreLo) * (j + u) / pre_count;
  }
  for (int p = 1; p <= post_count; ++p) {
    double s = post_count == 1
                   ? kLastScale
                   : kPostLo + (kLastScale - kPostLo) * (p - 1) / (post_count - 1);
    if (p < post_count) {
      s += std::uniform_real_distribution<double>(-0.02, 0.02)(rng);
    }
    scales[static_cast<std::size_t>(lumen_index + p)] = s;
  }

  // Wedge cuts on pre-lumen regions: apex at the lumen center, aperture
  // shrinking toward the designed region. A bifurcation leaves a residual
  // notch on the designed region itself, narrow enough for the pipeline's
  // dilation to heal.
  const double cone_widest =
      spec.artifact == ArtifactType::bifurcation_notch ? 1.4 : 0.9;
  const double cone_at_lumen =
      spec.artifact == ArtifactType::bifurcation_notch ? 0.12 : 0.0;
  std::vector<double> cone_width(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < pre_count; ++j) {
    cone_width[static_cast<std::size_t>(j)] =
        0.45 + (cone_widest - 0.45) * (pre_count - j) / pre_count;
  }
  cone_width[static_cast<std::size_t>(lumen_index)] = cone_at_lumen;

  // Post-lumen defects: a circular bump pinned just outside the lumen, plus a
  // tail down the darkened sector on shadow frames. Both sit at full size on
  // every post-lumen region: along the series the base ellipse grows while
  // the defect stays constant, so the defect weighs relatively less and the
  // compactness totals rise monotonically toward the last region. The series
  // then has no interior compactness maximum above the designed region's.
  const ContourPoint blob_center = frame.at(1.25, blob_dir);
  std::vector<double> blob_radius(static_cast<std::size_t>(n), 0.0);
  std::vector<double> tail_reach(static_cast<std::size_t>(n), 0.0);
  const double blob_size = 0.45 * spec.lumen.semi_minor +
                           std::uniform_real_distribution<double>(-0.5, 0.5)(rng);
  for (int p = 1; p <= post_count; ++p) {
    const std::size_t j = static_cast<std::size_t>(lumen_index + p);
    if (spec.artifact == ArtifactType::shadow_sector) {
      tail_reach[j] = 1.8;
    }
    blob_radius[j] = blob_size;
  }

  // Render the frame. The shadow darkens everything beyond the lumen within
  // its sector, wall and background alike.
  FrameImage img(spec.width, spec.height);
  std::uniform_int_distribution<int> noise(-spec.noise_amplitude,
                                           spec.noise_amplitude);
  std::vector<double> rho_grid(
      static_cast<std::size_t>(spec.width) * spec.height);
  std::vector<double> ang_grid(rho_grid.size());
  std::size_t i = 0;
  for (int r = 0; r < spec.height; ++r) {
    for (int c = 0; c < spec.width; ++c, ++i) {
      double rho, t;
      frame.polar(c, r, rho, t);
      rho_grid[i] = rho;
      ang_grid[i] = t;
      int level;
      if (spec.artifact == ArtifactType::shadow_sector && rho > kShadowInner &&
          angle_gap(t, shadow_dir) <= kShadowWidth / 2) {
        level = spec.shadow_level;
      } else if (rho <= 1.0) {
        level = spec.lumen_level;
      } else if (rho <= kWallOuter) {
        level = spec.wall_level;
      } else {
        level = spec.background_level;
      }
      img.at(r, c) = static_cast<std::uint8_t>(
          std::clamp(level + noise(rng), 0, 255));
    }
  }

  // Region series from the same elliptical grid; nesting holds because every
  // component is monotone along the series (growing bases and defects,
  // shrinking cuts).
  std::vector<RegionCoords> erels(static_cast<std::size_t>(n));
  i = 0;
  for (int r = 0; r < spec.height; ++r) {
    for (int c = 0; c < spec.width; ++c, ++i) {
      const double rho = rho_grid[i];
      const double t = ang_grid[i];
      const bool in_shadow_sector =
          angle_gap(t, shadow_dir) <= kShadowWidth / 2 && rho > kShadowInner;
      const double cone_gap = angle_gap(t, cone_dir);
      const double dxb = c - blob_center.x;
      const double dyb = r - blob_center.y;
      const double blob_dist = std::hypot(dxb, dyb);
      for (int j = 0; j < n; ++j) {
        const std::size_t ji = static_cast<std::size_t>(j);
        bool member = rho <= scales[ji];
        if (member && cone_width[ji] > 0 && cone_gap <= cone_width[ji] / 2) {
          member = false;
        }
        if (!member && blob_radius[ji] > 0 && blob_dist <= blob_radius[ji]) {
          member = true;
        }
        if (!member && tail_reach[ji] > 0 && in_shadow_sector &&
            rho <= tail_reach[ji]) {
          member = true;
        }
        if (member) erels[ji].push_back({r, c});
      }
    }
  }

  SynthFrame out;
  out.lumen_index = lumen_index;
  out.sample.frame = std::move(img);
  out.sample.erels = std::move(erels);
  out.sample.ground_truth = ellipse_contour(spec.lumen, 360);
  out.sample.category = category_for(spec.artifact);
  return out;
}

} // namespace erel
