#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gestalt/geometry.hpp"
#include "gestalt/nfa.hpp"
#include "gestalt/tip_index.hpp"

namespace gestalt {

/// The three detected structure types.
enum class GestaltKind {
  GoodContinuation,
  NonLocalAlignment,
  Bar,
};

/// One emitted structure: its type, the chain realizing it (for bars, the
/// two-element pairing), and its log10 false-alarm score. The score always
/// equals the recomputed log-NFA of the stored chain under the stored kind,
/// and satisfies the meaningfulness threshold it was emitted under.
struct Detection {
  GestaltKind kind = GestaltKind::GoodContinuation;
  Chain chain;
  LogNfa score;
};

/// A candidate chain with its score, before maximality filtering.
struct ScoredChain {
  Chain chain;
  LogNfa score;
};

/// Successor candidate keyed by position in the input span.
struct SuccessorRef {
  int position = -1;
  bool forward = true;
  double distance = 0.0;  ///< head tip to the successor's entry tip
};

/// Sector half-angle used when growing chains of the given kind: theta_s for
/// good continuations, align_theta for non-local alignments.
double sector_half_angle(const Params& params, GestaltKind mode);

/// At most the 3 closest unused segments whose nearer tip lies inside the
/// lambda-dilated search sector at the head of `current`, ordered by
/// increasing tip distance (ties by position). Each result is oriented so its
/// tail is the tip found in the sector. `used` is keyed by position in
/// `segments` and must cover the current segment.
std::vector<SuccessorRef> candidate_successor_refs(const DirectedSegment& current,
                                                   const TipIndex& index,
                                                   std::span<const LineSegment> segments,
                                                   const Params& params, GestaltKind mode,
                                                   const std::vector<bool>& used);

/// As candidate_successor_refs, materialized as oriented segments.
std::vector<DirectedSegment> candidate_successors(const DirectedSegment& current,
                                                  const TipIndex& index,
                                                  std::span<const LineSegment> segments,
                                                  const Params& params, GestaltKind mode,
                                                  const std::vector<bool>& used);

/// Depth-first chain growth from all 2N directed starting tips, branching
/// over the 3 closest sector candidates, rejecting joints with gap > rho or
/// turn angle above the mode's ceiling, with no segment repeated in a chain
/// and length capped at k_max. Every visited chain of length >= 2 is scored
/// with the mode's log-NFA; chains identical up to full reversal are emitted
/// once, stored in their canonical direction.
std::vector<ScoredChain> enumerate_chains(std::span<const LineSegment> segments,
                                          const Params& params, GestaltKind mode,
                                          const ImageDomain& domain, int k_max);

/// Scores a (k, d, theta) triple under the active mode; used to evaluate the
/// contiguous subchains competing with a candidate chain.
using ChainScorer = std::function<LogNfa(const ChainStats&)>;

/// Keeps candidates that are meaningful under epsilon and have no contiguous
/// subchain (length >= 2) with a strictly smaller score, then drops any
/// survivor whose segment set is fully contained in a strictly
/// better-scoring kept chain. Output sorted by ascending score; ties broken
/// by longer chain first, then smallest member id, then member id sequence.
std::vector<Detection> filter_maximal(std::vector<ScoredChain> candidates, double epsilon,
                                      GestaltKind kind, const ChainScorer& scorer);

/// Full pipeline for one kind: enumerate, score, keep maximal meaningful
/// chains. Deterministic for a given input.
std::vector<Detection> detect_good_continuations(std::span<const LineSegment> segments,
                                                 const Params& params,
                                                 const ImageDomain& domain);
std::vector<Detection> detect_alignments(std::span<const LineSegment> segments,
                                         const Params& params, const ImageDomain& domain);

}  // namespace gestalt
