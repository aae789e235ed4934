#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "gestalt/io.hpp"
#include "gestalt/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace gestalt;

namespace {

// Two parallel copies of the fragmented line, 4 px apart: each yields an
// alignment, and the two collapsed alignments form a bar.
std::vector<LineSegment> double_fragmented_line() {
  std::vector<LineSegment> segments = fixtures::five_fragment_line();
  const std::size_t base = segments.size();
  for (std::size_t i = 0; i < base; ++i) {
    LineSegment shifted = segments[i];
    shifted.id = static_cast<int>(base + i);
    shifted.a.y += 4.0;
    shifted.b.y += 4.0;
    segments.push_back(shifted);
  }
  return segments;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("kind flags select which detectors report") {
  const std::vector<LineSegment> segments = fixtures::five_fragment_line();
  const ImageDomain domain{512, 512};
  const Params params = Params::defaults(domain);

  const DetectionSet all = detect_all(segments, params, domain, kAllKinds);
  CHECK(all.good_continuations.size() == 1);
  CHECK(all.alignments.size() == 1);
  CHECK(all.bars.empty());
  REQUIRE(all.bar_operand_alignments.size() == 1);
  CHECK(all.bar_operand_alignments[0].score.value == all.alignments[0].score.value);

  const DetectionSet gc_only = detect_all(segments, params, domain, kGoodContinuations);
  CHECK(gc_only.good_continuations.size() == 1);
  CHECK(gc_only.alignments.empty());
  CHECK(gc_only.bars.empty());
  CHECK(gc_only.bar_operand_alignments.empty());

  const DetectionSet al_only = detect_all(segments, params, domain, kAlignments);
  CHECK(al_only.good_continuations.empty());
  CHECK(al_only.alignments.size() == 1);
  CHECK(al_only.bar_operand_alignments.empty());

  // The bar stage recomputes alignments internally when their own stage is
  // off: operands are populated, the alignment list stays unreported.
  const DetectionSet bars_only = detect_all(segments, params, domain, kBars);
  CHECK(bars_only.good_continuations.empty());
  CHECK(bars_only.alignments.empty());
  CHECK(bars_only.bars.empty());
  REQUIRE(bars_only.bar_operand_alignments.size() == 1);
  CHECK(bars_only.bar_operand_alignments[0].score.value == all.alignments[0].score.value);

  const DetectionSet none = detect_all(segments, params, domain, 0);
  CHECK(none.good_continuations.empty());
  CHECK(none.alignments.empty());
  CHECK(none.bars.empty());
  CHECK(none.bar_operand_alignments.empty());
}

TEST_CASE("parallel fragmented lines produce an alignment-operand bar") {
  const std::vector<LineSegment> segments = double_fragmented_line();
  const ImageDomain domain{512, 512};
  const Params params = Params::defaults(domain);

  const DetectionSet detections = detect_all(segments, params, domain, kAllKinds);
  REQUIRE(detections.alignments.size() == 2);  // one straight alignment per line
  CHECK(detections.alignments[0].chain.k() == 5);
  CHECK(detections.alignments[1].chain.k() == 5);
  CHECK(detections.bar_operand_alignments.size() == 2);

  // Five corresponding fragment pairs plus the collapsed alignment pair.
  REQUIRE(detections.bars.size() == 6);
  for (const Detection& bar : detections.bars) {
    CHECK(bar.kind == GestaltKind::Bar);
    CHECK(bar.chain.d == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(bar.chain.theta == doctest::Approx(std::numbers::pi).epsilon(1e-9));
  }

  const DetectionReport report = build_report(segments, params, domain, detections);
  REQUIRE(report.bars.size() == 6);

  int alignment_sourced = 0;
  int segment_sourced = 0;
  for (const ReportEntry& entry : report.bars) {
    REQUIRE(entry.elements.size() == 2);
    if (entry.elements[0].source == "alignment") {
      REQUIRE(entry.elements[1].source == "alignment");
      ++alignment_sourced;
      CHECK(entry.elements[0].members == std::vector<int>{0, 1, 2, 3, 4});
      CHECK(entry.elements[1].members == std::vector<int>{5, 6, 7, 8, 9});
      CHECK(entry.members == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
      CHECK(entry.k == 2);
    } else {
      CHECK(entry.elements[0].source == "segment");
      CHECK(entry.elements[1].source == "segment");
      ++segment_sourced;
      REQUIRE(entry.members.size() == 2);
      CHECK(entry.members[1] == entry.members[0] + 5);  // fragment i pairs its copy
    }
  }
  CHECK(alignment_sourced == 1);
  CHECK(segment_sourced == 5);
  CHECK(report.residuals.empty());
}

TEST_CASE("bar-only runs still resolve alignment operands in reports") {
  const std::vector<LineSegment> segments = double_fragmented_line();
  const ImageDomain domain{512, 512};
  const Params params = Params::defaults(domain);

  const DetectionSet detections = detect_all(segments, params, domain, kBars);
  CHECK(detections.alignments.empty());
  REQUIRE(detections.bar_operand_alignments.size() == 2);
  REQUIRE(detections.bars.size() == 6);

  const DetectionReport report = build_report(segments, params, domain, detections);
  CHECK(report.good_continuations.empty());
  CHECK(report.alignments.empty());
  REQUIRE(report.bars.size() == 6);
  CHECK(report.residuals.empty());  // bar members alone cover every input id

  int alignment_sourced = 0;
  for (const ReportEntry& entry : report.bars) {
    for (const ReportBarElement& element : entry.elements) {
      if (element.source == "alignment") ++alignment_sourced;
    }
  }
  CHECK(alignment_sourced == 2);
}

}  // TEST_SUITE
