#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gestalt/chain_detector.hpp"
#include "gestalt/geometry.hpp"
#include "gestalt/nfa.hpp"

namespace gestalt {

/// One operand of the parallelism test: either a raw input segment or a
/// collapsed alignment detection reduced to its end-to-end span. Collapsed
/// elements carry a negative synthetic segment id (-1 - alignment_index) so
/// report building can resolve them back to the alignment they came from.
struct BarElement {
  DirectedSegment geometry;
  int alignment_index = -1;  ///< index into the alignment detections, -1 for raw segments
  std::vector<int> members;  ///< raw segment ids covered by this element
};

/// Element wrapping a raw input segment.
BarElement make_bar_element(const LineSegment& segment);

/// Element spanning an alignment chain from its first tail tip to its last
/// head tip. Reversing the chain reverses the synthetic span but keeps the
/// same undirected geometry. Throws std::invalid_argument for detections of
/// any other kind.
BarElement collapse_alignment(const Detection& alignment, int alignment_index);

/// Mutual distance and inter-segment angle recomputed from a stored bar
/// pairing, whose two links run anti-parallel around the bar: the distance
/// pairs each link's tail with the other's head, and the angle is taken
/// between the stored directions (pi = perfectly parallel sides).
std::pair<double, double> bar_pair_stats(const Chain& chain);

/// Examines element pairs within reach of the mutual-distance gate (pruned
/// by a tip index), orients each pair so its tips correspond at minimal
/// mutual distance, and keeps pairs with d < rho, an inter-segment angle
/// within bar_theta_tol of pi, and a meaningful score under epsilon. The
/// score uses the element count as the test-count basis. Elements sharing a
/// raw segment never pair with each other. Output sorted by ascending score,
/// ties by smallest member id, then member id lists.
std::vector<Detection> detect_bars(std::span<const BarElement> elements, const Params& params,
                                   const ImageDomain& domain);

}  // namespace gestalt
