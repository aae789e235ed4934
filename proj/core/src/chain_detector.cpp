#include "gestalt/chain_detector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace gestalt {

namespace {

void validate_inputs(std::span<const LineSegment> segments, const Params& params,
                     const ImageDomain& domain) {
  params.validate();
  if (domain.m < 1 || domain.n < 1) {
    throw std::invalid_argument("detector: image domain must be at least 1x1");
  }
  std::unordered_set<int> ids;
  ids.reserve(segments.size());
  for (const LineSegment& s : segments) {
    if (s.a.x == s.b.x && s.a.y == s.b.y) {
      throw std::invalid_argument("detector: zero-length segment id " + std::to_string(s.id));
    }
    if (!ids.insert(s.id).second) {
      throw std::invalid_argument("detector: duplicate segment id " + std::to_string(s.id));
    }
  }
}

class ChainEnumerator {
 public:
  ChainEnumerator(std::span<const LineSegment> segments, const Params& params, GestaltKind mode,
                  const ImageDomain& domain, int k_max)
      : segments_(segments),
        params_(params),
        mode_(mode),
        domain_(domain),
        k_max_(k_max),
        ceiling_(sector_half_angle(params, mode)),
        index_(build_tip_index(segments, params.rho + params.lambda)),
        used_(segments.size(), false) {}

  std::vector<ScoredChain> run() {
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      for (const bool forward : {true, false}) {
        stack_.clear();
        stack_.push_back({static_cast<int>(i), forward});
        used_[i] = true;
        grow();
        used_[i] = false;
      }
    }
    std::vector<ScoredChain> result;
    result.reserve(unique_.size());
    for (auto& [key, chain] : unique_) result.push_back(std::move(chain));
    return result;
  }

 private:
  struct Slot {
    int position;
    bool forward;
  };

  DirectedSegment link_at(std::size_t i) const {
    return {segments_[stack_[i].position], stack_[i].forward};
  }

  void grow() {
    if (stack_.size() >= 2) record();
    if (static_cast<int>(stack_.size()) >= k_max_) return;
    const DirectedSegment current = link_at(stack_.size() - 1);
    const auto successors =
        candidate_successor_refs(current, index_, segments_, params_, mode_, used_);
    for (const SuccessorRef& next : successors) {
      if (next.distance > params_.rho) continue;
      const DirectedSegment link{segments_[next.position], next.forward};
      if (turn_angle(current, link) > ceiling_) continue;
      used_[next.position] = true;
      stack_.push_back({next.position, next.forward});
      grow();
      stack_.pop_back();
      used_[next.position] = false;
    }
  }

  // A chain and its full reversal encode the same structure; the
  // lexicographically smaller of the two token sequences identifies both and
  // fixes the stored direction.
  std::vector<std::uint32_t> tokens(bool reversed) const {
    std::vector<std::uint32_t> seq;
    seq.reserve(stack_.size());
    for (std::size_t i = 0; i < stack_.size(); ++i) {
      const Slot& slot = stack_[reversed ? stack_.size() - 1 - i : i];
      const bool forward = reversed ? !slot.forward : slot.forward;
      seq.push_back(static_cast<std::uint32_t>(slot.position) * 2u + (forward ? 1u : 0u));
    }
    return seq;
  }

  void record() {
    auto forward_tokens = tokens(false);
    auto reversed_tokens = tokens(true);
    const bool store_reversed = reversed_tokens < forward_tokens;
    auto& key = store_reversed ? reversed_tokens : forward_tokens;
    if (unique_.contains(key)) return;

    std::vector<DirectedSegment> links;
    links.reserve(stack_.size());
    for (std::size_t i = 0; i < stack_.size(); ++i) {
      links.push_back(link_at(store_reversed ? stack_.size() - 1 - i : i));
      if (store_reversed) links.back().forward = !links.back().forward;
    }
    ScoredChain scored;
    scored.chain = make_chain(std::move(links));
    scored.score = score(chain_stats(scored.chain.links));
    unique_.emplace(std::move(key), std::move(scored));
  }

  LogNfa score(const ChainStats& stats) const {
    const int n = static_cast<int>(segments_.size());
    const int k = static_cast<int>(stats.k);
    if (mode_ == GestaltKind::NonLocalAlignment) {
      return log_nfa_alignment(n, k, stats.d, stats.theta, params_.lambda, domain_);
    }
    return log_nfa_good_continuation(n, k, stats.d, stats.theta, domain_);
  }

  std::span<const LineSegment> segments_;
  const Params& params_;
  GestaltKind mode_;
  const ImageDomain& domain_;
  int k_max_;
  double ceiling_;
  TipIndex index_;
  std::vector<bool> used_;
  std::vector<Slot> stack_;
  std::map<std::vector<std::uint32_t>, ScoredChain> unique_;
};

int min_member_id(const Chain& chain) {
  int min_id = std::numeric_limits<int>::max();
  for (const DirectedSegment& link : chain.links) min_id = std::min(min_id, link.segment.id);
  return min_id;
}

std::vector<int> member_ids(const Chain& chain) {
  std::vector<int> ids;
  ids.reserve(chain.links.size());
  for (const DirectedSegment& link : chain.links) ids.push_back(link.segment.id);
  return ids;
}

// Deterministic output order: best score first, then longer chains, then
// smallest member id, then the member id sequence.
bool detection_order(const ScoredChain& lhs, const ScoredChain& rhs) {
  if (lhs.score.value != rhs.score.value) return lhs.score.value < rhs.score.value;
  if (lhs.chain.k() != rhs.chain.k()) return lhs.chain.k() > rhs.chain.k();
  const int lhs_min = min_member_id(lhs.chain);
  const int rhs_min = min_member_id(rhs.chain);
  if (lhs_min != rhs_min) return lhs_min < rhs_min;
  return member_ids(lhs.chain) < member_ids(rhs.chain);
}

// True iff some contiguous subchain of length >= 2 scores strictly below the
// chain's own score.
bool has_better_subchain(const ScoredChain& cand, const ChainScorer& scorer) {
  const std::vector<JointMetrics> joints = chain_joints(cand.chain.links);
  const std::size_t k = cand.chain.k();
  for (std::size_t first = 0; first + 1 < k; ++first) {
    ChainStats stats;
    for (std::size_t last = first + 1; last < k; ++last) {
      if (first == 0 && last == k - 1) break;  // the chain itself is not a competitor
      stats.k = last - first + 1;
      stats.d = std::max(stats.d, joints[last - 1].gap);
      stats.theta = std::max(stats.theta, joints[last - 1].angle);
      if (scorer(stats).value < cand.score.value) return true;
    }
  }
  return false;
}

}  // namespace

double sector_half_angle(const Params& params, GestaltKind mode) {
  return mode == GestaltKind::NonLocalAlignment ? params.align_theta : params.theta_s;
}

std::vector<SuccessorRef> candidate_successor_refs(const DirectedSegment& current,
                                                   const TipIndex& index,
                                                   std::span<const LineSegment> segments,
                                                   const Params& params, GestaltKind mode,
                                                   const std::vector<bool>& used) {
  const Point head = current.head();
  const Point dir = current.direction();
  const double ceiling = sector_half_angle(params, mode);

  std::vector<TipRef> nearby;
  index.query_disk(head, params.rho + params.lambda, nearby);

  std::vector<SuccessorRef> candidates;
  std::vector<char> seen(segments.size(), 0);
  for (const TipRef& tip : nearby) {
    const int j = tip.segment_index;
    if (seen[j]) continue;
    seen[j] = 1;
    if (used[j] || segments[j].id == current.segment.id) continue;
    const double da = tip_distance(segments[j].a, head);
    const double db = tip_distance(segments[j].b, head);
    const bool forward = da <= db;
    const Point near = forward ? segments[j].a : segments[j].b;
    if (!in_search_sector(head, dir, near, params.rho, ceiling, params.lambda)) continue;
    candidates.push_back({j, forward, std::min(da, db)});
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const SuccessorRef& lhs, const SuccessorRef& rhs) {
              if (lhs.distance != rhs.distance) return lhs.distance < rhs.distance;
              return lhs.position < rhs.position;
            });
  if (candidates.size() > 3) candidates.resize(3);
  return candidates;
}

std::vector<DirectedSegment> candidate_successors(const DirectedSegment& current,
                                                  const TipIndex& index,
                                                  std::span<const LineSegment> segments,
                                                  const Params& params, GestaltKind mode,
                                                  const std::vector<bool>& used) {
  std::vector<DirectedSegment> result;
  for (const SuccessorRef& ref :
       candidate_successor_refs(current, index, segments, params, mode, used)) {
    result.push_back({segments[ref.position], ref.forward});
  }
  return result;
}

std::vector<ScoredChain> enumerate_chains(std::span<const LineSegment> segments,
                                          const Params& params, GestaltKind mode,
                                          const ImageDomain& domain, int k_max) {
  if (k_max < 2) throw std::invalid_argument("enumerate_chains: k_max must be >= 2");
  if (segments.empty()) return {};
  return ChainEnumerator(segments, params, mode, domain, k_max).run();
}

std::vector<Detection> filter_maximal(std::vector<ScoredChain> candidates, double epsilon,
                                      GestaltKind kind, const ChainScorer& scorer) {
  const double log_epsilon = std::log10(epsilon);

  std::vector<ScoredChain> maximal;
  for (ScoredChain& cand : candidates) {
    if (!(cand.score.value < log_epsilon)) continue;
    if (has_better_subchain(cand, scorer)) continue;
    maximal.push_back(std::move(cand));
  }
  std::sort(maximal.begin(), maximal.end(), detection_order);

  // A kept chain suppresses any later (worse-scoring) chain whose segments it
  // fully contains.
  std::vector<Detection> kept;
  std::vector<std::vector<int>> kept_ids;
  for (ScoredChain& cand : maximal) {
    std::vector<int> ids = member_ids(cand.chain);
    std::sort(ids.begin(), ids.end());
    bool suppressed = false;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (kept[i].score.value < cand.score.value &&
          std::includes(kept_ids[i].begin(), kept_ids[i].end(), ids.begin(), ids.end())) {
        suppressed = true;
        break;
      }
    }
    if (suppressed) continue;
    kept.push_back({kind, std::move(cand.chain), cand.score});
    kept_ids.push_back(std::move(ids));
  }
  return kept;
}

std::vector<Detection> detect_good_continuations(std::span<const LineSegment> segments,
                                                 const Params& params,
                                                 const ImageDomain& domain) {
  validate_inputs(segments, params, domain);
  const int n = static_cast<int>(segments.size());
  auto candidates =
      enumerate_chains(segments, params, GestaltKind::GoodContinuation, domain, params.k_max);
  const ChainScorer scorer = [n, &domain](const ChainStats& stats) {
    return log_nfa_good_continuation(n, static_cast<int>(stats.k), stats.d, stats.theta, domain);
  };
  return filter_maximal(std::move(candidates), params.epsilon, GestaltKind::GoodContinuation,
                        scorer);
}

std::vector<Detection> detect_alignments(std::span<const LineSegment> segments,
                                         const Params& params, const ImageDomain& domain) {
  validate_inputs(segments, params, domain);
  if (!(params.lambda > 0.0)) {
    throw std::invalid_argument("detect_alignments: lambda must be > 0");
  }
  const int n = static_cast<int>(segments.size());
  const double lambda = params.lambda;
  auto candidates =
      enumerate_chains(segments, params, GestaltKind::NonLocalAlignment, domain, params.k_max);
  const ChainScorer scorer = [n, lambda, &domain](const ChainStats& stats) {
    return log_nfa_alignment(n, static_cast<int>(stats.k), stats.d, stats.theta, lambda, domain);
  };
  return filter_maximal(std::move(candidates), params.epsilon, GestaltKind::NonLocalAlignment,
                        scorer);
}

}  // namespace gestalt
