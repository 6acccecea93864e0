#pragma once

#include <cstdint>
#include <string>

#include "erel/selection.hpp"

namespace erel {

/// Image artifact injected into a synthetic frame's region series.
enum class ArtifactType { none, bifurcation_notch, shadow_sector };

std::string to_string(ArtifactType a);
ArtifactType artifact_from_string(const std::string& s);

Category category_for(ArtifactType a);

/// Recipe for one synthetic frame: a dark elliptical lumen inside a bright
/// vessel wall, plus a nested series of distractor regions around the
/// designed lumen region.
struct SynthSpec {
  int width = 192;
  int height = 192;
  Ellipse lumen;
  /// Regions other than the designed lumen; at least 3.
  int distractor_count = 8;
  ArtifactType artifact = ArtifactType::none;
  std::uint8_t lumen_level = 30;
  std::uint8_t background_level = 80;
  std::uint8_t wall_level = 120;
  std::uint8_t shadow_level = 35;
  int noise_amplitude = 10;
  std::uint64_t seed = 0;
};

/// Draws a plausible random recipe: lumen placed near the canvas center with
/// bounded eccentricity, 6 to 8 distractors. Deterministic in the seed.
SynthSpec random_synth_spec(std::uint64_t seed, ArtifactType artifact,
                            int width = 192, int height = 192);

struct SynthFrame {
  FrameSample sample;
  /// Position of the designed lumen region within sample.erels.
  int lumen_index = -1;
};

/// Renders the frame and its region series. The series is strictly nested;
/// smaller-than-lumen regions carry shrinking wedge cuts and larger ones
/// carry growing defects, so the designed region is the most elliptical.
/// Ground truth is the designed lumen contour.
SynthFrame generate_synthetic(const SynthSpec& spec);

} // namespace erel
