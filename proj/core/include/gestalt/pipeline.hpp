#pragma once

#include <span>
#include <vector>

#include "gestalt/bar_detector.hpp"
#include "gestalt/chain_detector.hpp"

namespace gestalt {

/// Bit flags selecting which detectors run.
enum KindFlags : unsigned {
  kGoodContinuations = 1u << 0,
  kAlignments = 1u << 1,
  kBars = 1u << 2,
  kAllKinds = kGoodContinuations | kAlignments | kBars,
};

/// Detections of all kinds from one run, in detector order.
/// `bar_operand_alignments` is the alignment list the bar stage collapsed its
/// synthetic operands from (equal to `alignments` when that stage ran); bar
/// chains reference entries in it by synthetic id.
struct DetectionSet {
  std::vector<Detection> good_continuations;
  std::vector<Detection> alignments;
  std::vector<Detection> bars;
  std::vector<Detection> bar_operand_alignments;
};

/// Runs the enabled detectors over one segment set. The bar stage always
/// pairs over raw segments plus collapsed alignments (alignments are
/// recomputed internally when their own stage is disabled), since alignments
/// are first-class bar operands; only the enabled kinds are reported.
DetectionSet detect_all(std::span<const LineSegment> segments, const Params& params,
                        const ImageDomain& domain, unsigned kinds = kAllKinds);

}  // namespace gestalt
