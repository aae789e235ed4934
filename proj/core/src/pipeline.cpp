#include "gestalt/pipeline.hpp"

namespace gestalt {

DetectionSet detect_all(std::span<const LineSegment> segments, const Params& params,
                        const ImageDomain& domain, unsigned kinds) {
  DetectionSet result;
  if (kinds & kGoodContinuations) {
    result.good_continuations = detect_good_continuations(segments, params, domain);
  }
  if (kinds & kAlignments) {
    result.alignments = detect_alignments(segments, params, domain);
  }
  if (kinds & kBars) {
    result.bar_operand_alignments =
        (kinds & kAlignments) ? result.alignments : detect_alignments(segments, params, domain);
    std::vector<BarElement> elements;
    elements.reserve(segments.size() + result.bar_operand_alignments.size());
    for (const LineSegment& s : segments) elements.push_back(make_bar_element(s));
    for (std::size_t i = 0; i < result.bar_operand_alignments.size(); ++i) {
      elements.push_back(
          collapse_alignment(result.bar_operand_alignments[i], static_cast<int>(i)));
    }
    result.bars = detect_bars(elements, params, domain);
  }
  return result;
}

}  // namespace gestalt
