#include "gestalt/tip_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gestalt {

namespace {

// Grid coordinates are clamped so arbitrarily large tip coordinates cannot
// overflow the integer cell index.
constexpr double kMaxCell = 1e9;

}  // namespace

TipIndex::TipIndex(std::span<const LineSegment> segments, double cell_size)
    : cell_size_(cell_size) {
  if (!(cell_size > 0.0)) throw std::invalid_argument("tip index: cell_size must be > 0");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const LineSegment& s = segments[i];
    for (int tip = 0; tip < 2; ++tip) {
      const Point p = tip == 0 ? s.a : s.b;
      const std::uint64_t key = cell_key(cell_of(p.x), cell_of(p.y));
      buckets_[key].push_back({p, {static_cast<int>(i), tip}});
      ++tip_count_;
    }
  }
}

std::int64_t TipIndex::cell_of(double v) const {
  return static_cast<std::int64_t>(std::clamp(std::floor(v / cell_size_), -kMaxCell, kMaxCell));
}

std::uint64_t TipIndex::cell_key(std::int64_t cx, std::int64_t cy) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(cy));
}

void TipIndex::query_disk(const Point& center, double radius, std::vector<TipRef>& out) const {
  if (radius < 0.0) return;
  const std::int64_t cx_lo = cell_of(center.x - radius);
  const std::int64_t cx_hi = cell_of(center.x + radius);
  const std::int64_t cy_lo = cell_of(center.y - radius);
  const std::int64_t cy_hi = cell_of(center.y + radius);
  for (std::int64_t cx = cx_lo; cx <= cx_hi; ++cx) {
    for (std::int64_t cy = cy_lo; cy <= cy_hi; ++cy) {
      const auto it = buckets_.find(cell_key(cx, cy));
      if (it == buckets_.end()) continue;
      for (const Entry& e : it->second) {
        if (tip_distance(e.p, center) <= radius) out.push_back(e.ref);
      }
    }
  }
}

TipIndex build_tip_index(std::span<const LineSegment> segments, double cell_size) {
  return TipIndex(segments, cell_size);
}

}  // namespace gestalt
