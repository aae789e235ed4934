#include "gestalt/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gestalt {

Point DirectedSegment::direction() const {
  const Point t = tail();
  const Point h = head();
  const double dx = h.x - t.x;
  const double dy = h.y - t.y;
  const double len = std::sqrt(dx * dx + dy * dy);
  if (len == 0.0) return {0.0, 0.0};
  return {dx / len, dy / len};
}

double tip_distance(const Point& p, const Point& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return std::sqrt(dx * dx + dy * dy);
}

double angle_between(const Point& u, const Point& v) {
  const double dot = u.x * v.x + u.y * v.y;
  const double cross = std::abs(u.x * v.y - u.y * v.x);
  if (dot == 0.0 && cross == 0.0) return 0.0;
  return std::atan2(cross, dot);
}

double turn_angle(const DirectedSegment& incoming, const DirectedSegment& outgoing) {
  return angle_between(incoming.direction(), outgoing.direction());
}

JointMetrics joint_metrics(const DirectedSegment& incoming, const DirectedSegment& outgoing) {
  const Point h = incoming.head();
  const Point t = outgoing.tail();
  JointMetrics j;
  j.gap = tip_distance(h, t);
  j.angle = turn_angle(incoming, outgoing);
  if (j.gap > 0.0) {
    const Point g{t.x - h.x, t.y - h.y};
    j.angle = std::max(j.angle, angle_between(incoming.direction(), g));
    j.angle = std::max(j.angle, angle_between(outgoing.direction(), g));
  }
  return j;
}

double mutual_distance(const DirectedSegment& s1, const DirectedSegment& s2) {
  return (tip_distance(s1.tail(), s2.tail()) + tip_distance(s1.head(), s2.head())) / 2.0;
}

double distance_to_sector(const Point& end_tip, const Point& direction, const Point& q,
                          double rho, double theta_s) {
  const double rx = q.x - end_tip.x;
  const double ry = q.y - end_tip.y;
  const double r = std::sqrt(rx * rx + ry * ry);
  if (r == 0.0) return 0.0;

  // Local frame: `along` on the sector axis, `across` folded onto the upper
  // half plane, so both boundary edges collapse onto the one at +theta_s.
  const double along = rx * direction.x + ry * direction.y;
  const double across = std::abs(rx * direction.y - ry * direction.x);
  if (std::atan2(across, along) <= theta_s) return std::max(0.0, r - rho);

  // Outside the cone the nearest sector point is on the straight boundary
  // edge from the apex to the arc corner.
  const double ex = rho * std::cos(theta_s);
  const double ey = rho * std::sin(theta_s);
  const double t = std::clamp((along * ex + across * ey) / (rho * rho), 0.0, 1.0);
  const double dx = along - t * ex;
  const double dy = across - t * ey;
  return std::sqrt(dx * dx + dy * dy);
}

bool in_search_sector(const Point& end_tip, const Point& direction, const Point& q,
                      double rho, double theta_s, double lambda) {
  return distance_to_sector(end_tip, direction, q, rho, theta_s) <= lambda;
}

std::vector<JointMetrics> chain_joints(std::span<const DirectedSegment> links) {
  std::vector<JointMetrics> joints;
  if (links.size() < 2) return joints;
  joints.reserve(links.size() - 1);
  for (std::size_t i = 0; i + 1 < links.size(); ++i) {
    joints.push_back(joint_metrics(links[i], links[i + 1]));
  }
  return joints;
}

ChainStats chain_stats(std::span<const DirectedSegment> links) {
  ChainStats stats;
  stats.k = links.size();
  for (const JointMetrics& j : chain_joints(links)) {
    stats.d = std::max(stats.d, j.gap);
    stats.theta = std::max(stats.theta, j.angle);
  }
  return stats;
}

Chain make_chain(std::vector<DirectedSegment> links) {
  Chain chain;
  const ChainStats stats = chain_stats(links);
  chain.links = std::move(links);
  chain.d = stats.d;
  chain.theta = stats.theta;
  return chain;
}

}  // namespace gestalt
