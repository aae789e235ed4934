#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gestalt/pipeline.hpp"
#include "gestalt/simulation.hpp"

namespace gestalt {

/// One parser message, tied to a 1-based input line (column 0 when the issue
/// spans the whole line).
struct ParseDiagnostic {
  int line = 0;
  int column = 0;
  std::string message;

  bool operator==(const ParseDiagnostic&) const = default;
};

/// Parse outcome: all valid segments (ids assigned in input order from 0),
/// any trailing fields per segment (preserved verbatim, ignored by
/// detection), and accumulated diagnostics. The parser never aborts on a
/// malformed line; it records a diagnostic and continues.
struct ParseResult {
  std::vector<LineSegment> segments;
  std::vector<std::vector<std::string>> extras;  ///< parallel to segments
  std::vector<ParseDiagnostic> diagnostics;
};

/// Reads whitespace-separated "x1 y1 x2 y2 [extras...]" lines. '#'-prefixed
/// and blank lines are skipped; lines with fewer than four numeric fields,
/// malformed numbers, non-finite coordinates, and zero-length segments are
/// reported and dropped.
ParseResult parse_segments(std::string_view text);

/// One element record inside a bar report entry.
struct ReportBarElement {
  std::string source;        ///< "segment" or "alignment"
  std::vector<int> members;  ///< raw segment ids in the element's chain order
  bool forward = true;       ///< traversal direction of the element's span in the pair

  bool operator==(const ReportBarElement&) const = default;
};

/// One detection in a report. For chains, `orientations` holds one flag per
/// member. For bars, `members` flattens both elements' raw ids,
/// `orientations` holds the two element traversal flags, and `elements`
/// details each operand.
struct ReportEntry {
  std::vector<int> members;
  std::vector<bool> orientations;
  int k = 0;
  double d = 0.0;
  double theta = 0.0;
  double log_nfa = 0.0;
  std::vector<ReportBarElement> elements;

  bool operator==(const ReportEntry&) const = default;
};

/// Machine-readable outcome of one detection run. Every input segment id
/// appears either in at least one detection or in `residuals`, never both.
struct DetectionReport {
  ImageDomain domain;
  Params params;
  std::vector<ReportEntry> good_continuations;
  std::vector<ReportEntry> alignments;
  std::vector<ReportEntry> bars;
  std::vector<int> residuals;

  bool operator==(const DetectionReport&) const = default;
};

/// Report for a detection run. All real values are rounded to 6 decimals
/// here, so serializing and re-parsing the report reproduces it exactly.
DetectionReport build_report(std::span<const LineSegment> segments, const Params& params,
                             const ImageDomain& domain, const DetectionSet& detections);

/// Deterministic JSON serialization: stable key order, fixed 6-decimal
/// reals, -infinity encoded as the string "-inf". Byte-identical across runs
/// for identical reports.
std::string write_report(const DetectionReport& report);

/// Inverse of write_report. Throws std::runtime_error on malformed input.
DetectionReport parse_report(std::string_view text);

/// Calibration summary document, same serialization conventions as
/// write_report; records the seed so runs are reproducible.
std::string write_calibration_summary(const CalibrationResult& result, const H0Config& config,
                                      const Params& params);

/// Presentation options for render_svg.
struct SvgStyle {
  double stroke_width = 1.5;
};

/// Standalone SVG drawing on an m x n canvas: residual segments in gray
/// first, then one group per detection (merged report order) colored from a
/// fixed 12-color palette cycled by detection index. Byte-stable for
/// identical inputs.
std::string render_svg(std::span<const LineSegment> segments, const DetectionReport& report,
                       const SvgStyle& style = {});

}  // namespace gestalt
