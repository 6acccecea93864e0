#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace erel {

/// Integer pixel position, (row, col) with row 0 at the top.
struct PixelCoord {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const PixelCoord&, const PixelCoord&) = default;
};

/// An extremal region as the detector emits it: an unordered pixel list.
using RegionCoords = std::vector<PixelCoord>;

/// 8-bit grayscale image, row-major.
class FrameImage {
public:
  FrameImage(int width, int height, std::uint8_t fill = 0);
  FrameImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  std::uint8_t at(int row, int col) const { return pixels_[index(row, col)]; }
  std::uint8_t& at(int row, int col) { return pixels_[index(row, col)]; }
  bool in_bounds(int row, int col) const noexcept {
    return row >= 0 && row < height_ && col >= 0 && col < width_;
  }

  const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }

private:
  std::size_t index(int row, int col) const;

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Binary region mask over a fixed canvas, stored as packed 64-bit words so
/// that set algebra and area reduce to word operations.
class BinaryMask {
public:
  BinaryMask() = default;
  BinaryMask(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool test(int row, int col) const noexcept {
    const std::size_t i = bit(row, col);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(int row, int col) noexcept {
    const std::size_t i = bit(row, col);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  void reset(int row, int col) noexcept {
    const std::size_t i = bit(row, col);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  /// Sets every column in [col_first, col_last] of one row. Bounds are the
  /// caller's responsibility; the span must satisfy col_first <= col_last.
  void set_row_span(int row, int col_first, int col_last) noexcept;

  bool in_bounds(int row, int col) const noexcept {
    return row >= 0 && row < height_ && col >= 0 && col < width_;
  }

  std::size_t area() const noexcept;
  bool empty() const noexcept { return area() == 0; }

  /// Member pixels in row-major order.
  std::vector<PixelCoord> coords() const;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;
  friend BinaryMask intersect(const BinaryMask& a, const BinaryMask& b);
  friend BinaryMask unite(const BinaryMask& a, const BinaryMask& b);

private:
  std::size_t bit(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Region mask plus the source intensities of its member pixels. Intensities
/// are kept on the full canvas with non-members pinned to zero.
class GrayMask {
public:
  GrayMask(BinaryMask mask, std::vector<std::uint8_t> canvas_intensities);

  const BinaryMask& mask() const noexcept { return mask_; }
  int width() const noexcept { return mask_.width(); }
  int height() const noexcept { return mask_.height(); }

  /// Intensity at a member pixel; zero everywhere else.
  std::uint8_t intensity(int row, int col) const {
    return intensities_[static_cast<std::size_t>(row) * width() + col];
  }
  const std::vector<std::uint8_t>& intensities() const noexcept {
    return intensities_;
  }

private:
  BinaryMask mask_;
  std::vector<std::uint8_t> intensities_;
};

/// Paints a coordinate list onto an empty w x h canvas. Duplicate pixels
/// collapse; any out-of-bounds coordinate raises input_error naming it.
BinaryMask rasterize(const RegionCoords& coords, int width, int height);

/// Region pixels with their intensities from the frame; coordinates must lie
/// inside the frame.
GrayMask extract_gray(const RegionCoords& coords, const FrameImage& frame);

std::size_t area(const BinaryMask& m) noexcept;
BinaryMask intersect(const BinaryMask& a, const BinaryMask& b);
BinaryMask unite(const BinaryMask& a, const BinaryMask& b);

/// True when every member of `a` is a member of `b`.
bool is_subset(const BinaryMask& a, const BinaryMask& b);

/// Mean intensity over member pixels. Empty masks have no mean.
double mean_intensity(const GrayMask& g);

} // namespace erel
