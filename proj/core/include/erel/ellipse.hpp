#pragma once

#include <span>
#include <vector>

#include "erel/mask.hpp"

namespace erel {

/// Point in continuous image coordinates: x along columns, y along rows.
struct ContourPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Geometric ellipse. Invariants: semi_major >= semi_minor > 0 and
/// angle in [0, pi), measured from the +x axis to the major axis.
struct Ellipse {
  double center_x = 0.0;
  double center_y = 0.0;
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double angle = 0.0;
};

/// Member pixels with at least one 4-neighbour that is unset or off-canvas.
std::vector<PixelCoord> boundary_pixels(const BinaryMask& m);

/// Direct least-squares conic fit constrained to ellipses. Throws fit_error
/// when fewer than five points are given or no ellipse solution exists
/// (collinear or otherwise degenerate scatter).
Ellipse fit_ellipse(std::span<const ContourPoint> points);

/// Convenience overload mapping pixel (row, col) to (x = col, y = row).
Ellipse fit_ellipse(const std::vector<PixelCoord>& pixels);

/// Second-moment ellipse of a region: centroid, principal axes, semi-axis
/// lengths 2 * sqrt(eigenvalue) clamped to at least half a pixel. Fallback
/// for regions the conic fit rejects.
Ellipse moment_ellipse(const BinaryMask& m);

/// Pixels whose centers lie inside or on the ellipse, clipped to the canvas.
/// May be empty when the ellipse lies outside the canvas.
BinaryMask rasterize_ellipse(const Ellipse& e, int width, int height);

/// n >= 8 points sampled at uniform parameter steps, counter-clockwise from
/// the major axis.
std::vector<ContourPoint> ellipse_contour(const Ellipse& e, int n);

} // namespace erel
