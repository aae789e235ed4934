#pragma once

// Deterministic input arrangements shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gestalt/geometry.hpp"

namespace fixtures {

// Five nearly collinear fragments of one horizontal line, ~2 px apart, with
// sub-pixel vertical jitter so no statistic degenerates to an exact zero.
inline std::vector<gestalt::LineSegment> five_fragment_line() {
  return {
      {0, {10.0, 100.1}, {100.0, 99.9}},
      {1, {102.0, 100.05}, {200.0, 100.2}},
      {2, {202.0, 99.85}, {300.0, 100.0}},
      {3, {302.0, 100.15}, {400.0, 99.95}},
      {4, {402.0, 100.0}, {500.0, 100.1}},
  };
}

// Four sides of a 100 x 60 axis-aligned rectangle, each shaved by 1/sqrt(2)
// at both ends so every corner joint has gap exactly 1 and turn pi/2.
inline std::vector<gestalt::LineSegment> rectangle_sides() {
  const double s = 1.0 / std::sqrt(2.0);
  return {
      {0, {100.0 + s, 100.0}, {200.0 - s, 100.0}},
      {1, {200.0, 100.0 + s}, {200.0, 160.0 - s}},
      {2, {200.0 - s, 160.0}, {100.0 + s, 160.0}},
      {3, {100.0, 160.0 - s}, {100.0, 100.0 + s}},
  };
}

// Two anti-parallel horizontal segments at mutual distance 4: a bar, but too
// sharp a reversal for any chain.
inline std::vector<gestalt::LineSegment> antiparallel_pair() {
  return {
      {0, {0.0, 0.0}, {10.0, 0.0}},
      {1, {10.0, 4.0}, {0.0, 4.0}},
  };
}

// Random-Lines arrangement: long random lines fragmented into collinear
// pieces with small gaps, shuffled. Tips of different source lines are kept
// at least `kTipClearance` apart, which exceeds the maximal joint reach
// rho + lambda = 12 of the default configuration, so no chain can ever cross
// from one source line to another.
struct RandomLinesFixture {
  std::vector<gestalt::LineSegment> segments;
  std::vector<int> source_line;  // per segment id
  int line_count = 0;
};

inline constexpr double kTipClearance = 13.0;

namespace detail {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct PendingTip {
  double x, y;
};

inline bool clear_of(const std::vector<PendingTip>& tips, double x, double y) {
  for (const PendingTip& t : tips) {
    const double dx = t.x - x;
    const double dy = t.y - y;
    if (std::sqrt(dx * dx + dy * dy) < kTipClearance) return false;
  }
  return true;
}

}  // namespace detail

inline RandomLinesFixture make_random_lines(std::uint64_t seed, int line_count = 10) {
  for (std::uint64_t attempt_seed = seed;; ++attempt_seed) {
    std::mt19937_64 rng(attempt_seed);
    RandomLinesFixture fixture;
    fixture.line_count = line_count;

    std::vector<detail::PendingTip> other_tips;  // tips of previously placed lines
    std::vector<std::vector<gestalt::LineSegment>> per_line;
    bool failed = false;

    for (int line = 0; line < line_count && !failed; ++line) {
      bool placed = false;
      for (int line_attempt = 0; line_attempt < 400 && !placed; ++line_attempt) {
        const double ax = detail::uniform01(rng) * 512.0;
        const double ay = detail::uniform01(rng) * 512.0;
        const double bx = detail::uniform01(rng) * 512.0;
        const double by = detail::uniform01(rng) * 512.0;
        const double len = std::sqrt((bx - ax) * (bx - ax) + (by - ay) * (by - ay));
        if (len < 300.0) continue;
        if (!detail::clear_of(other_tips, ax, ay) || !detail::clear_of(other_tips, bx, by)) {
          continue;
        }
        const double ux = (bx - ax) / len;
        const double uy = (by - ay) / len;

        const int fragments = 4 + static_cast<int>(detail::uniform01(rng) * 3.0);
        // Cut positions along [0, len]: gap intervals of width 1..1.95 whose
        // endpoints stay clear of all other lines' tips and of each other.
        std::vector<std::pair<double, double>> cuts;
        bool cuts_ok = true;
        for (int c = 0; c + 1 < fragments && cuts_ok; ++c) {
          bool cut_placed = false;
          for (int cut_attempt = 0; cut_attempt < 200 && !cut_placed; ++cut_attempt) {
            const double gap = 1.0 + detail::uniform01(rng) * 0.95;
            const double center = 15.0 + detail::uniform01(rng) * (len - 30.0);
            const double lo = center - gap / 2.0;
            const double hi = center + gap / 2.0;
            bool ok = true;
            for (const auto& [clo, chi] : cuts) {
              if (lo < chi + 10.0 && clo < hi + 10.0) ok = false;  // keep pieces >= 10 px
            }
            if (ok) {
              for (const double t : {lo, hi}) {
                if (!detail::clear_of(other_tips, ax + t * ux, ay + t * uy)) ok = false;
              }
            }
            if (ok) {
              cuts.emplace_back(lo, hi);
              cut_placed = true;
            }
          }
          cuts_ok = cut_placed;
        }
        if (!cuts_ok) continue;
        std::sort(cuts.begin(), cuts.end());

        std::vector<double> bounds{0.0};
        for (const auto& [lo, hi] : cuts) {
          bounds.push_back(lo);
          bounds.push_back(hi);
        }
        bounds.push_back(len);

        std::vector<gestalt::LineSegment> pieces;
        for (std::size_t f = 0; f + 1 < bounds.size(); f += 2) {
          const double t0 = bounds[f];
          const double t1 = bounds[f + 1];
          // Sub-pixel perpendicular jitter, as segment detectors produce.
          const double j0 = (detail::uniform01(rng) - 0.5) * 0.2;
          const double j1 = (detail::uniform01(rng) - 0.5) * 0.2;
          gestalt::LineSegment piece;
          piece.a = {ax + t0 * ux - j0 * uy, ay + t0 * uy + j0 * ux};
          piece.b = {ax + t1 * ux - j1 * uy, ay + t1 * uy + j1 * ux};
          pieces.push_back(piece);
        }
        per_line.push_back(pieces);
        for (const gestalt::LineSegment& piece : pieces) {
          other_tips.push_back({piece.a.x, piece.a.y});
          other_tips.push_back({piece.b.x, piece.b.y});
        }
        placed = true;
      }
      failed = !placed;
    }
    if (failed) continue;  // retry the whole arrangement from the next seed

    std::vector<std::pair<gestalt::LineSegment, int>> all;
    for (std::size_t line = 0; line < per_line.size(); ++line) {
      for (const gestalt::LineSegment& piece : per_line[line]) {
        all.emplace_back(piece, static_cast<int>(line));
      }
    }
    for (std::size_t i = all.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(detail::uniform01(rng) * i);
      std::swap(all[i - 1], all[std::min(j, i - 1)]);
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
      all[i].first.id = static_cast<int>(i);
      fixture.segments.push_back(all[i].first);
      fixture.source_line.push_back(all[i].second);
    }
    return fixture;
  }
}

}  // namespace fixtures
