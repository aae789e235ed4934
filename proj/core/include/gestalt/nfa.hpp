#pragma once

#include "gestalt/geometry.hpp"

namespace gestalt {

/// Detector configuration. Angles are radians; lengths are pixels.
struct Params {
  double rho = 10.0;           ///< max gap between consecutive tips
  double theta_s = 0.0;        ///< sector half-angle / max turn for continuations
  double lambda = 2.0;         ///< tip-misalignment margin (sector dilation)
  double epsilon = 1.0;        ///< meaningfulness threshold on the expected false alarms
  double align_theta = 0.0;    ///< angular ceiling for non-local alignments
  double bar_theta_tol = 0.0;  ///< allowed deviation of the bar angle from pi
  int k_max = 64;              ///< chain length cap during enumeration

  /// Defaults: theta_s = 150 deg, alignment ceiling 3 deg, bar tolerance
  /// 3 deg, lambda = 2 px, epsilon = 1, rho = min(10, ceil(0.1 * max(m,n))).
  static Params defaults(const ImageDomain& domain);

  /// Throws std::invalid_argument on any violated constraint.
  void validate() const;

  bool operator==(const Params&) const = default;
};

/// Base-10 logarithm of a number of false alarms; -infinity encodes NFA = 0.
struct LogNfa {
  double value = 0.0;
};

/// Expected count, over all tests performed, of chains at least as structured
/// as (k, d, theta) arising among n_segments segments with independent
/// uniformly distributed tips:
///   2N * 3^(k-1) * ((N-1) * theta*d^2/(mn) * theta/pi)^(k-1)
/// evaluated entirely in log10 domain. k = 1 yields log10(2N); a
/// zero-probability joint term (d = 0 or theta = 0 with k >= 2) yields
/// -infinity. Throws std::invalid_argument for n_segments < 1 or k < 1.
LogNfa log_nfa_good_continuation(int n_segments, int k, double d, double theta,
                                 const ImageDomain& domain);

/// As above for fragmented straight lines, where the reachable sector shrinks
/// to a rectangle of dimensions 2*lambda by d:
///   2N * 3^(k-1) * ((N-1) * 2*lambda*d/(mn) * theta/pi)^(k-1)
/// Throws std::invalid_argument for n_segments < 1, k < 1, or lambda <= 0.
LogNfa log_nfa_alignment(int n_segments, int k, double d, double theta, double lambda,
                         const ImageDomain& domain);

/// Expected count of element pairs at mutual distance d and inter-segment
/// angle theta among n_elements elements:
///   3N * (N-1) * (pi*d^2/(mn))^2 * theta/pi
/// Throws std::invalid_argument for n_elements < 2.
LogNfa log_nfa_bar(int n_elements, double d, double theta, const ImageDomain& domain);

/// True iff score.value < log10(epsilon); the inequality is strict.
bool is_meaningful(LogNfa score, double epsilon);

}  // namespace gestalt
