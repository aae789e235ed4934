#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gestalt {

/// A point in continuous pixel coordinates.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// An input line segment: two tips and a stable identifier.
/// Segments are immutable inputs; zero-length segments are rejected at parse time.
struct LineSegment {
  int id = -1;
  Point a;
  Point b;
};

/// A segment together with a traversal direction (forward = a to b).
/// Chains are built from directed segments so each link has a well-defined
/// tail (entry tip) and head (exit tip).
struct DirectedSegment {
  LineSegment segment;
  bool forward = true;

  Point tail() const { return forward ? segment.a : segment.b; }
  Point head() const { return forward ? segment.b : segment.a; }

  /// Unit vector from tail to head; (0,0) for a degenerate segment.
  Point direction() const;

  DirectedSegment reversed() const { return {segment, !forward}; }
};

/// The image rectangle [0,m]x[0,n] acting as the reference domain for all
/// accidentalness computations.
struct ImageDomain {
  int m = 0;  ///< width in pixels
  int n = 0;  ///< height in pixels

  double area() const { return static_cast<double>(m) * static_cast<double>(n); }

  bool operator==(const ImageDomain&) const = default;
};

/// Summary statistics of a chain: link count, maximal joint gap, maximal
/// joint angular deviation.
struct ChainStats {
  std::size_t k = 0;
  double d = 0.0;
  double theta = 0.0;
};

/// Gap length and angular deviation at one joint between consecutive links.
struct JointMetrics {
  double gap = 0.0;
  double angle = 0.0;
};

/// An ordered, oriented sequence of segments with its cached statistics.
/// `d` and `theta` always equal the values recomputed by chain_stats(links);
/// both are 0 for a single-link chain. (Bar detections reuse Chain as a
/// two-element pairing whose d/theta carry the pair statistics instead; see
/// bar_detector.hpp.)
struct Chain {
  std::vector<DirectedSegment> links;
  double d = 0.0;
  double theta = 0.0;

  std::size_t k() const { return links.size(); }
};

/// Euclidean distance between two tips.
double tip_distance(const Point& p, const Point& q);

/// Angle in [0, pi] between two direction vectors (not necessarily unit).
/// Returns 0 for parallel same-sense vectors, pi for opposite ones.
double angle_between(const Point& u, const Point& v);

/// Deviation from straight continuation at a joint: 0 when the outgoing
/// segment continues the incoming direction exactly, pi for a full reversal.
/// Invariant under translation of either segment.
double turn_angle(const DirectedSegment& incoming, const DirectedSegment& outgoing);

/// Gap and angular deviation at the joint between two consecutive links.
/// The angle is the largest of the direction change and the deviations of the
/// connecting gap vector from either link's direction, so a chain realizes the
/// grouping event with sector half-angle theta in both traversal directions:
/// every connecting tip lies inside the theta-cone of its predecessor and every
/// direction change stays below theta. A zero-length gap contributes no
/// positional deviation.
JointMetrics joint_metrics(const DirectedSegment& incoming, const DirectedSegment& outgoing);

/// Average distance between respective tips of two directed segments:
/// (|tail1 - tail2| + |head1 - head2|) / 2.
double mutual_distance(const DirectedSegment& s1, const DirectedSegment& s2);

/// Euclidean distance from q to the circular sector of radius rho and
/// half-angle theta_s whose apex is end_tip and whose axis is `direction`
/// (a unit vector). Zero for points inside the sector.
double distance_to_sector(const Point& end_tip, const Point& direction, const Point& q,
                          double rho, double theta_s);

/// True iff q lies in the lambda-dilation of the search sector: within radius
/// rho and angular deviation theta_s of the continuation direction, or within
/// distance lambda of that sector.
bool in_search_sector(const Point& end_tip, const Point& direction, const Point& q,
                      double rho, double theta_s, double lambda);

/// Per-joint metrics for a chain of consecutive links (size = links.size() - 1).
std::vector<JointMetrics> chain_joints(std::span<const DirectedSegment> links);

/// (k, d, theta) for an ordered link sequence: k = link count, d = max joint
/// gap, theta = max joint angular deviation; d = theta = 0 when k = 1.
ChainStats chain_stats(std::span<const DirectedSegment> links);

/// Chain with cached statistics filled in from the links.
Chain make_chain(std::vector<DirectedSegment> links);

}  // namespace gestalt
