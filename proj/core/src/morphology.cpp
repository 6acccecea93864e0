#include "erel/morphology.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "erel/errors.hpp"

namespace erel {
namespace {

// Offsets of one SE row collapsed into contiguous column runs, so dilation
// can OR whole spans instead of single bits.
struct RowRun {
  int drow;
  int dcol_first;
  int dcol_last;
};

std::vector<RowRun> collapse_rows(const StructuringElement& se) {
  std::map<int, std::vector<int>> by_row;
  for (const PixelCoord& o : se.offsets) by_row[o.row].push_back(o.col);
  std::vector<RowRun> runs;
  for (auto& [drow, cols] : by_row) {
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    int first = cols.front();
    int prev = first;
    for (std::size_t i = 1; i < cols.size(); ++i) {
      if (cols[i] != prev + 1) {
        runs.push_back({drow, first, prev});
        first = cols[i];
      }
      prev = cols[i];
    }
    runs.push_back({drow, first, prev});
  }
  return runs;
}

} // namespace

StructuringElement disk(int radius) {
  if (radius < 0) {
    throw input_error("disk: radius must be non-negative, got " +
                      std::to_string(radius));
  }
  StructuringElement se;
  const int r2 = radius * radius;
  for (int dr = -radius; dr <= radius; ++dr) {
    for (int dc = -radius; dc <= radius; ++dc) {
      if (dr * dr + dc * dc <= r2) se.offsets.push_back({dr, dc});
    }
  }
  return se;
}

BinaryMask dilate(const BinaryMask& m, const StructuringElement& se) {
  BinaryMask out(m.width(), m.height());
  if (se.offsets.empty()) return out;
  const std::vector<RowRun> runs = collapse_rows(se);
  const int w = m.width();
  const int h = m.height();
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!m.test(r, c)) continue;
      for (const RowRun& run : runs) {
        const int rr = r + run.drow;
        if (rr < 0 || rr >= h) continue;
        const int c0 = std::max(0, c + run.dcol_first);
        const int c1 = std::min(w - 1, c + run.dcol_last);
        if (c0 <= c1) out.set_row_span(rr, c0, c1);
      }
    }
  }
  return out;
}

} // namespace erel
