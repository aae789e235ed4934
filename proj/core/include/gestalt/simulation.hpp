#pragma once

#include <cstdint>
#include <vector>

#include "gestalt/geometry.hpp"
#include "gestalt/nfa.hpp"

namespace gestalt {

/// Null-model configuration: segments whose tips are independent uniform
/// points in the image domain.
struct H0Config {
  int n_segments = 0;
  ImageDomain domain;
  int trials = 1;
  std::uint64_t seed = 0;
};

/// Detection-count summary for one kind across trials.
struct KindTally {
  double mean = 0.0;
  int max = 0;
};

/// Empirical false-alarm counts across Monte Carlo trials.
struct CalibrationResult {
  KindTally good_continuations;
  KindTally alignments;
  KindTally bars;
  int trials = 0;
};

/// N segments with tips drawn independently and uniformly from
/// [0,m] x [0,n], reproducible from (seed, trial_index) alone and identical
/// across platforms (fixed generator and uniform mapping). Coincident tip
/// pairs are resampled. Segment ids are 0..N-1.
std::vector<LineSegment> sample_h0(const H0Config& config, int trial_index);

/// Runs all three detectors on each of `trials` null-model samples and
/// aggregates per-kind detection counts. Bit-deterministic given
/// (config, params).
CalibrationResult calibrate(const H0Config& config, const Params& params);

}  // namespace gestalt
