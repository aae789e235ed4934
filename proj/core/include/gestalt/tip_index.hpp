#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "gestalt/geometry.hpp"

namespace gestalt {

/// Reference to one tip of an indexed segment.
struct TipRef {
  int segment_index = -1;  ///< position in the segment span the index was built over
  int tip = 0;             ///< 0 = tip a, 1 = tip b
};

/// Uniform-grid hash over segment tips for radius queries. A query inspects
/// only the grid cells intersecting the query disk and then filters by exact
/// distance, so it returns precisely the tips within the radius. Iteration
/// order is fixed (cells row-major, insertion order within a cell), making
/// query results independent of hash-map layout.
class TipIndex {
 public:
  TipIndex() = default;
  TipIndex(std::span<const LineSegment> segments, double cell_size);

  /// Appends every tip within `radius` of `center` (inclusive) to `out`.
  void query_disk(const Point& center, double radius, std::vector<TipRef>& out) const;

  double cell_size() const { return cell_size_; }
  std::size_t tip_count() const { return tip_count_; }
  std::size_t bucket_count() const { return buckets_.size(); }

 private:
  struct Entry {
    Point p;
    TipRef ref;
  };

  std::int64_t cell_of(double v) const;
  static std::uint64_t cell_key(std::int64_t cx, std::int64_t cy);

  double cell_size_ = 1.0;
  std::size_t tip_count_ = 0;
  std::unordered_map<std::uint64_t, std::vector<Entry>> buckets_;
};

/// Index over all 2N tips of `segments`. cell_size must be > 0.
TipIndex build_tip_index(std::span<const LineSegment> segments, double cell_size);

}  // namespace gestalt
