#include "gestalt/bar_detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "gestalt/tip_index.hpp"

namespace gestalt {

namespace {

bool lex_le(const Point& p, const Point& q) {
  if (p.x != q.x) return p.x < q.x;
  return p.y <= q.y;
}

// Orientation-independent view of an element: tips in lexicographic order, so
// the pairing decision does not depend on how the input was stored.
DirectedSegment canonical_geometry(const DirectedSegment& g) {
  return lex_le(g.tail(), g.head()) ? g : g.reversed();
}

bool members_intersect(const std::vector<int>& lhs, const std::vector<int>& rhs) {
  auto l = lhs.begin();
  auto r = rhs.begin();
  while (l != lhs.end() && r != rhs.end()) {
    if (*l == *r) return true;
    if (*l < *r) {
      ++l;
    } else {
      ++r;
    }
  }
  return false;
}

}  // namespace

BarElement make_bar_element(const LineSegment& segment) {
  BarElement element;
  element.geometry = {segment, true};
  element.alignment_index = -1;
  element.members = {segment.id};
  return element;
}

BarElement collapse_alignment(const Detection& alignment, int alignment_index) {
  if (alignment.kind != GestaltKind::NonLocalAlignment) {
    throw std::invalid_argument("collapse_alignment: detection is not an alignment");
  }
  if (alignment.chain.links.empty()) {
    throw std::invalid_argument("collapse_alignment: empty chain");
  }
  LineSegment span;
  span.id = -1 - alignment_index;
  span.a = alignment.chain.links.front().tail();
  span.b = alignment.chain.links.back().head();

  BarElement element;
  element.geometry = {span, true};
  element.alignment_index = alignment_index;
  element.members.reserve(alignment.chain.links.size());
  for (const DirectedSegment& link : alignment.chain.links) {
    element.members.push_back(link.segment.id);
  }
  return element;
}

std::pair<double, double> bar_pair_stats(const Chain& chain) {
  if (chain.links.size() != 2) {
    throw std::invalid_argument("bar_pair_stats: chain must have exactly 2 links");
  }
  const DirectedSegment& s1 = chain.links[0];
  const DirectedSegment& s2 = chain.links[1];
  const double d =
      (tip_distance(s1.tail(), s2.head()) + tip_distance(s1.head(), s2.tail())) / 2.0;
  const double theta = angle_between(s1.direction(), s2.direction());
  return {d, theta};
}

std::vector<Detection> detect_bars(std::span<const BarElement> elements, const Params& params,
                                   const ImageDomain& domain) {
  params.validate();
  if (domain.m < 1 || domain.n < 1) {
    throw std::invalid_argument("detect_bars: image domain must be at least 1x1");
  }
  const int n_elements = static_cast<int>(elements.size());
  if (n_elements < 2) return {};

  struct Prepared {
    DirectedSegment geometry;
    std::vector<int> sorted_members;
    bool degenerate = false;
  };
  std::vector<Prepared> prepared(elements.size());
  std::vector<LineSegment> spans(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    Prepared& p = prepared[i];
    p.geometry = canonical_geometry(elements[i].geometry);
    p.sorted_members = elements[i].members;
    std::sort(p.sorted_members.begin(), p.sorted_members.end());
    const Point t = p.geometry.tail();
    const Point h = p.geometry.head();
    p.degenerate = t.x == h.x && t.y == h.y;
    spans[i] = {static_cast<int>(i), t, h};
  }

  // Elements in a pair are ordered by their members, so output does not
  // depend on the order elements were passed in.
  const auto element_order = [&](int lhs, int rhs) {
    const std::vector<int>& lm = prepared[lhs].sorted_members;
    const std::vector<int>& rm = prepared[rhs].sorted_members;
    const int lhs_min = lm.empty() ? std::numeric_limits<int>::max() : lm.front();
    const int rhs_min = rm.empty() ? std::numeric_limits<int>::max() : rm.front();
    if (lhs_min != rhs_min) return lhs_min < rhs_min;
    if (lm != rm) return lm < rm;
    return lhs < rhs;
  };

  // d < rho under the best tip pairing implies one of the matched tip
  // distances is below rho, so a radius-rho query around each tip yields a
  // superset of the valid pairs.
  const TipIndex index = build_tip_index(spans, params.rho);
  std::set<std::pair<int, int>> pairs;
  std::vector<TipRef> nearby;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (prepared[i].degenerate) continue;
    for (const Point& tip : {prepared[i].geometry.tail(), prepared[i].geometry.head()}) {
      nearby.clear();
      index.query_disk(tip, params.rho, nearby);
      for (const TipRef& ref : nearby) {
        const int j = ref.segment_index;
        if (j == static_cast<int>(i) || prepared[j].degenerate) continue;
        pairs.emplace(std::min<int>(i, j), std::max<int>(i, j));
      }
    }
  }

  struct Scored {
    Detection det;
    int min_member;
    const std::vector<int>* first_members;
    const std::vector<int>* second_members;
  };
  std::vector<Scored> scored;
  for (const auto& [i, j] : pairs) {
    const int first = element_order(i, j) ? i : j;
    const int second = first == i ? j : i;
    if (members_intersect(prepared[first].sorted_members, prepared[second].sorted_members)) {
      continue;
    }

    const DirectedSegment& s1 = prepared[first].geometry;
    const DirectedSegment& s2 = prepared[second].geometry;
    const double d_parallel = mutual_distance(s1, s2);
    const double d_crossed = mutual_distance(s1, s2.reversed());
    const DirectedSegment chosen = d_parallel <= d_crossed ? s2 : s2.reversed();
    const double d = std::min(d_parallel, d_crossed);
    if (!(d < params.rho)) continue;

    const double deviation = angle_between(s1.direction(), chosen.direction());
    if (deviation > params.bar_theta_tol) continue;
    const double theta = std::numbers::pi - deviation;

    const LogNfa score = log_nfa_bar(n_elements, d, theta, domain);
    if (!is_meaningful(score, params.epsilon)) continue;

    Scored entry;
    entry.det.kind = GestaltKind::Bar;
    entry.det.chain.links = {s1, chosen.reversed()};  // anti-parallel traversal around the bar
    entry.det.chain.d = d;
    entry.det.chain.theta = theta;
    entry.det.score = score;
    entry.first_members = &prepared[first].sorted_members;
    entry.second_members = &prepared[second].sorted_members;
    entry.min_member = std::min(entry.first_members->empty() ? std::numeric_limits<int>::max()
                                                             : entry.first_members->front(),
                                entry.second_members->empty() ? std::numeric_limits<int>::max()
                                                              : entry.second_members->front());
    scored.push_back(std::move(entry));
  }

  std::sort(scored.begin(), scored.end(), [](const Scored& lhs, const Scored& rhs) {
    if (lhs.det.score.value != rhs.det.score.value) {
      return lhs.det.score.value < rhs.det.score.value;
    }
    if (lhs.min_member != rhs.min_member) return lhs.min_member < rhs.min_member;
    if (*lhs.first_members != *rhs.first_members) return *lhs.first_members < *rhs.first_members;
    return *lhs.second_members < *rhs.second_members;
  });

  std::vector<Detection> detections;
  detections.reserve(scored.size());
  for (Scored& entry : scored) detections.push_back(std::move(entry.det));
  return detections;
}

}  // namespace gestalt
