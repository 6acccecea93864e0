#include "erel/ellipse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "erel/errors.hpp"

namespace erel {
namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, kPi);
  if (a < 0) a += kPi;
  // fmod can land exactly on pi after the correction.
  if (a >= kPi) a -= kPi;
  return a;
}

Ellipse canonical(double cx, double cy, double r0, double r1, double angle) {
  if (r0 < r1) {
    std::swap(r0, r1);
    angle += kPi / 2;
  }
  return Ellipse{cx, cy, r0, r1, wrap_angle(angle)};
}

/// Geometric parameters of the conic A x^2 + B xy + C y^2 + D x + E y + F = 0,
/// valid only when the conic is a real ellipse.
Ellipse conic_to_ellipse(double A, double B, double C, double D, double E,
                         double F) {
  const double det = 4 * A * C - B * B;
  if (det <= 0) throw fit_error("conic is not an ellipse");
  // det > 0 forces A and C to share a sign; pin it positive so the real
  // ellipse condition below reads the same either way.
  if (A < 0) {
    A = -A; B = -B; C = -C; D = -D; E = -E; F = -F;
  }
  const double cx = (B * E - 2 * C * D) / det;
  const double cy = (B * D - 2 * A * E) / det;
  // Constant term after recentering; negative for a real ellipse.
  const double f0 = A * cx * cx + B * cx * cy + C * cy * cy + D * cx + E * cy + F;
  if (!(f0 < 0)) throw fit_error("conic has no real ellipse points");
  Eigen::Matrix2d Q;
  Q << A, B / 2, B / 2, C;
  Q /= -f0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(Q);
  if (es.info() != Eigen::Success) throw fit_error("conic eigensolve failed");
  const double l0 = es.eigenvalues()(0); // smaller eigenvalue: major axis
  const double l1 = es.eigenvalues()(1);
  if (l0 <= 0) throw fit_error("conic is not an ellipse");
  const Eigen::Vector2d v = es.eigenvectors().col(0);
  return canonical(cx, cy, 1 / std::sqrt(l0), 1 / std::sqrt(l1),
                   std::atan2(v.y(), v.x()));
}

} // namespace

std::vector<PixelCoord> boundary_pixels(const BinaryMask& m) {
  if (m.empty()) throw degenerate_error("boundary_pixels: empty mask");
  std::vector<PixelCoord> out;
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      if (!m.test(r, c)) continue;
      const bool interior = r > 0 && m.test(r - 1, c) && r + 1 < m.height() &&
                            m.test(r + 1, c) && c > 0 && m.test(r, c - 1) &&
                            c + 1 < m.width() && m.test(r, c + 1);
      if (!interior) out.push_back({r, c});
    }
  }
  return out;
}

Ellipse fit_ellipse(std::span<const ContourPoint> points) {
  const std::size_t n = points.size();
  if (n < 5) {
    throw fit_error("fit_ellipse: need at least 5 points, got " +
                    std::to_string(n));
  }

  // Normalize to a centered, unit-scale frame for conditioning. A uniform
  // scale keeps the ellipse constraint exact and makes denormalization a
  // similarity transform of the geometric parameters.
  double mx = 0, my = 0;
  for (const ContourPoint& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double spread = 0;
  for (const ContourPoint& p : points) {
    spread += std::abs(p.x - mx) + std::abs(p.y - my);
  }
  const double scale = spread / (2.0 * static_cast<double>(n));
  if (!(scale > 0)) throw fit_error("fit_ellipse: coincident points");

  // Scatter blocks of the design matrix split into quadratic part
  // q = (x^2, xy, y^2) and linear part l = (x, y, 1).
  Eigen::Matrix3d S1 = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d S2 = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d S3 = Eigen::Matrix3d::Zero();
  for (const ContourPoint& p : points) {
    const double x = (p.x - mx) / scale;
    const double y = (p.y - my) / scale;
    Eigen::Vector3d q(x * x, x * y, y * y);
    Eigen::Vector3d l(x, y, 1.0);
    S1 += q * q.transpose();
    S2 += q * l.transpose();
    S3 += l * l.transpose();
  }

  Eigen::FullPivLU<Eigen::Matrix3d> lu(S3);
  if (!lu.isInvertible()) {
    throw fit_error("fit_ellipse: degenerate point scatter");
  }
  const Eigen::Matrix3d T = -lu.solve(S2.transpose());
  const Eigen::Matrix3d M0 = S1 + S2 * T;
  // Premultiply by the inverse of the constraint matrix [[0,0,2],[0,-1,0],[2,0,0]].
  Eigen::Matrix3d M;
  M.row(0) = M0.row(2) / 2;
  M.row(1) = -M0.row(1);
  M.row(2) = M0.row(0) / 2;

  Eigen::EigenSolver<Eigen::Matrix3d> es(M);
  if (es.info() != Eigen::Success) throw fit_error("fit_ellipse: eigensolve failed");

  // The ellipse solution is the eigenvector with 4ac - b^2 > 0; at most one
  // real eigenvector satisfies it.
  int best = -1;
  double best_cond = 0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(es.eigenvalues()(i).imag()) >
        1e-9 * (1 + std::abs(es.eigenvalues()(i).real()))) {
      continue;
    }
    const Eigen::Vector3d v = es.eigenvectors().col(i).real();
    const double cond = 4 * v(0) * v(2) - v(1) * v(1);
    if (cond > best_cond) {
      best_cond = cond;
      best = i;
    }
  }
  if (best < 0) throw fit_error("fit_ellipse: no ellipse solution");

  const Eigen::Vector3d a1 = es.eigenvectors().col(best).real();
  const Eigen::Vector3d a2 = T * a1;
  Ellipse e = conic_to_ellipse(a1(0), a1(1), a1(2), a2(0), a2(1), a2(2));
  // Undo the normalization.
  e.center_x = e.center_x * scale + mx;
  e.center_y = e.center_y * scale + my;
  e.semi_major *= scale;
  e.semi_minor *= scale;
  return e;
}

Ellipse fit_ellipse(const std::vector<PixelCoord>& pixels) {
  std::vector<ContourPoint> pts;
  pts.reserve(pixels.size());
  for (const PixelCoord& p : pixels) {
    pts.push_back({static_cast<double>(p.col), static_cast<double>(p.row)});
  }
  return fit_ellipse(std::span<const ContourPoint>(pts));
}

Ellipse moment_ellipse(const BinaryMask& m) {
  if (m.empty()) throw degenerate_error("moment_ellipse: empty mask");
  double sx = 0, sy = 0;
  std::size_t n = 0;
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      if (!m.test(r, c)) continue;
      sx += c;
      sy += r;
      ++n;
    }
  }
  const double cx = sx / static_cast<double>(n);
  const double cy = sy / static_cast<double>(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      if (!m.test(r, c)) continue;
      const double dx = c - cx;
      const double dy = r - cy;
      sxx += dx * dx;
      sxy += dx * dy;
      syy += dy * dy;
    }
  }
  Eigen::Matrix2d cov;
  cov << sxx, sxy, sxy, syy;
  cov /= static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
  // Semi-axis of a solid ellipse with matching second moments is twice the
  // standard deviation along the principal direction. Single-pixel regions
  // collapse, so clamp to half a pixel.
  const double lo = std::max(es.eigenvalues()(0), 1.0 / 16.0);
  const double hi = std::max(es.eigenvalues()(1), 1.0 / 16.0);
  const Eigen::Vector2d v = es.eigenvectors().col(1); // larger eigenvalue
  return canonical(cx, cy, 2 * std::sqrt(hi), 2 * std::sqrt(lo),
                   std::atan2(v.y(), v.x()));
}

BinaryMask rasterize_ellipse(const Ellipse& e, int width, int height) {
  if (!(e.semi_major > 0) || !(e.semi_minor > 0) || e.semi_major < e.semi_minor) {
    throw input_error("rasterize_ellipse: invalid semi-axes");
  }
  BinaryMask out(width, height);
  const int r0 = std::max(0, static_cast<int>(std::floor(e.center_y - e.semi_major)));
  const int r1 = std::min(height - 1,
                          static_cast<int>(std::ceil(e.center_y + e.semi_major)));
  const int c0 = std::max(0, static_cast<int>(std::floor(e.center_x - e.semi_major)));
  const int c1 = std::min(width - 1,
                          static_cast<int>(std::ceil(e.center_x + e.semi_major)));
  const double ct = std::cos(e.angle);
  const double st = std::sin(e.angle);
  const double inv_a2 = 1.0 / (e.semi_major * e.semi_major);
  const double inv_b2 = 1.0 / (e.semi_minor * e.semi_minor);
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      const double dx = c - e.center_x;
      const double dy = r - e.center_y;
      const double u = dx * ct + dy * st;
      const double v = -dx * st + dy * ct;
      if (u * u * inv_a2 + v * v * inv_b2 <= 1.0) out.set(r, c);
    }
  }
  return out;
}

std::vector<ContourPoint> ellipse_contour(const Ellipse& e, int n) {
  if (n < 8) {
    throw input_error("ellipse_contour: need at least 8 samples, got " +
                      std::to_string(n));
  }
  const double ct = std::cos(e.angle);
  const double st = std::sin(e.angle);
  std::vector<ContourPoint> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = 2 * kPi * k / n;
    const double u = e.semi_major * std::cos(t);
    const double v = e.semi_minor * std::sin(t);
    pts.push_back({e.center_x + u * ct - v * st, e.center_y + u * st + v * ct});
  }
  return pts;
}

} // namespace erel
