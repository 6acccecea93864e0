#pragma once

#include <vector>

#include "erel/mask.hpp"

namespace erel {

/// Structuring element given as (drow, dcol) offsets from the anchor pixel.
struct StructuringElement {
  std::vector<PixelCoord> offsets;
};

/// Discrete Euclidean disk: all offsets with drow^2 + dcol^2 <= radius^2.
/// radius 0 is the identity element.
StructuringElement disk(int radius);

/// Binary dilation, clipped at the canvas border. Output pixels outside the
/// canvas are discarded rather than growing the canvas.
BinaryMask dilate(const BinaryMask& m, const StructuringElement& se);

} // namespace erel
