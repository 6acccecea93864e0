#include "erel/mask.hpp"

#include <bit>
#include <string>

#include "erel/errors.hpp"

namespace erel {
namespace {

void check_dims(int width, int height, const char* what) {
  if (width <= 0 || height <= 0) {
    throw input_error(std::string(what) + ": dimensions must be positive, got " +
                      std::to_string(width) + "x" + std::to_string(height));
  }
}

void check_same_canvas(const BinaryMask& a, const BinaryMask& b, const char* what) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw input_error(std::string(what) + ": canvas mismatch, " +
                      std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                      " vs " + std::to_string(b.width()) + "x" +
                      std::to_string(b.height()));
  }
}

} // namespace

FrameImage::FrameImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dims(width, height, "FrameImage");
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

FrameImage::FrameImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height, "FrameImage");
  const std::size_t expected = static_cast<std::size_t>(width) * height;
  if (pixels_.size() != expected) {
    throw input_error("FrameImage: pixel buffer holds " +
                      std::to_string(pixels_.size()) + " bytes, expected " +
                      std::to_string(expected));
  }
}

std::size_t FrameImage::index(int row, int col) const {
  if (!in_bounds(row, col)) {
    throw input_error("FrameImage: pixel (" + std::to_string(row) + ", " +
                      std::to_string(col) + ") outside " + std::to_string(width_) +
                      "x" + std::to_string(height_));
  }
  return static_cast<std::size_t>(row) * width_ + col;
}

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  check_dims(width, height, "BinaryMask");
  const std::size_t bits = static_cast<std::size_t>(width) * height;
  words_.assign((bits + 63) / 64, 0);
}

void BinaryMask::set_row_span(int row, int col_first, int col_last) noexcept {
  std::size_t lo = bit(row, col_first);
  const std::size_t hi = bit(row, col_last);
  while (lo <= hi) {
    const std::size_t word = lo >> 6;
    const unsigned first = static_cast<unsigned>(lo & 63);
    const std::size_t word_end = (word << 6) + 63;
    const unsigned last = static_cast<unsigned>(std::min(hi, word_end) & 63);
    const std::uint64_t ones = ~std::uint64_t{0};
    const std::uint64_t span = (ones >> (63 - last)) & (ones << first);
    words_[word] |= span;
    lo = word_end + 1;
  }
}

std::size_t BinaryMask::area() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

std::vector<PixelCoord> BinaryMask::coords() const {
  std::vector<PixelCoord> out;
  out.reserve(area());
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      if (test(r, c)) out.push_back({r, c});
    }
  }
  return out;
}

GrayMask::GrayMask(BinaryMask mask, std::vector<std::uint8_t> canvas_intensities)
    : mask_(std::move(mask)), intensities_(std::move(canvas_intensities)) {
  const std::size_t expected =
      static_cast<std::size_t>(mask_.width()) * mask_.height();
  if (intensities_.size() != expected) {
    throw input_error("GrayMask: intensity buffer holds " +
                      std::to_string(intensities_.size()) + " bytes, expected " +
                      std::to_string(expected));
  }
  // Non-members carry no intensity.
  std::size_t i = 0;
  for (int r = 0; r < mask_.height(); ++r) {
    for (int c = 0; c < mask_.width(); ++c, ++i) {
      if (!mask_.test(r, c)) intensities_[i] = 0;
    }
  }
}

BinaryMask rasterize(const RegionCoords& coords, int width, int height) {
  BinaryMask m(width, height);
  for (const PixelCoord& p : coords) {
    if (!m.in_bounds(p.row, p.col)) {
      throw input_error("rasterize: pixel (" + std::to_string(p.row) + ", " +
                        std::to_string(p.col) + ") outside " +
                        std::to_string(width) + "x" + std::to_string(height));
    }
    m.set(p.row, p.col);
  }
  return m;
}

GrayMask extract_gray(const RegionCoords& coords, const FrameImage& frame) {
  BinaryMask m = rasterize(coords, frame.width(), frame.height());
  std::vector<std::uint8_t> intensities(frame.pixels().size(), 0);
  for (const PixelCoord& p : coords) {
    intensities[static_cast<std::size_t>(p.row) * frame.width() + p.col] =
        frame.at(p.row, p.col);
  }
  return GrayMask(std::move(m), std::move(intensities));
}

std::size_t area(const BinaryMask& m) noexcept { return m.area(); }

BinaryMask intersect(const BinaryMask& a, const BinaryMask& b) {
  check_same_canvas(a, b, "intersect");
  BinaryMask out = a;
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] &= b.words_[i];
  return out;
}

BinaryMask unite(const BinaryMask& a, const BinaryMask& b) {
  check_same_canvas(a, b, "unite");
  BinaryMask out = a;
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] |= b.words_[i];
  return out;
}

bool is_subset(const BinaryMask& a, const BinaryMask& b) {
  check_same_canvas(a, b, "is_subset");
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    if (a.words()[i] & ~b.words()[i]) return false;
  }
  return true;
}

double mean_intensity(const GrayMask& g) {
  const std::size_t n = g.mask().area();
  if (n == 0) {
    throw degenerate_error("mean_intensity: empty region has no mean");
  }
  // Non-member entries are zero, so a flat sum over the canvas is the member sum.
  std::uint64_t sum = 0;
  for (std::uint8_t v : g.intensities()) sum += v;
  return static_cast<double>(sum) / static_cast<double>(n);
}

} // namespace erel
