#include "gestalt/io.hpp"

#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>

namespace gestalt {

namespace {

constexpr const char* kPalette[] = {
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#0d8a8a",
    "#b8860b", "#f032e6", "#6b8e23", "#9a6324", "#5a2ca0", "#708090",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

void append_fixed(std::string& out, double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  out += buf;
}

void append_line(std::string& out, const LineSegment& segment) {
  out += "    <line x1=\"";
  append_fixed(out, segment.a.x, 3);
  out += "\" y1=\"";
  append_fixed(out, segment.a.y, 3);
  out += "\" x2=\"";
  append_fixed(out, segment.b.x, 3);
  out += "\" y2=\"";
  append_fixed(out, segment.b.y, 3);
  out += "\"/>\n";
}

void open_group(std::string& out, const char* color, double stroke_width) {
  out += "  <g fill=\"none\" stroke=\"";
  out += color;
  out += "\" stroke-width=\"";
  append_fixed(out, stroke_width, 3);
  out += "\" stroke-linecap=\"round\">\n";
}

}  // namespace

std::string render_svg(std::span<const LineSegment> segments, const DetectionReport& report,
                       const SvgStyle& style) {
  std::map<int, const LineSegment*> by_id;
  for (const LineSegment& s : segments) by_id[s.id] = &s;
  const auto lookup = [&by_id](int id) -> const LineSegment& {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw std::invalid_argument("svg: report references unknown segment id " +
                                  std::to_string(id));
    }
    return *it->second;
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(report.domain.m) + "\" height=\"" + std::to_string(report.domain.n) +
         "\" viewBox=\"0 0 " + std::to_string(report.domain.m) + " " +
         std::to_string(report.domain.n) + "\">\n";
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  open_group(out, "#808080", style.stroke_width);
  for (const int id : report.residuals) append_line(out, lookup(id));
  out += "  </g>\n";

  std::size_t group_index = 0;
  for (const std::vector<ReportEntry>* list :
       {&report.good_continuations, &report.alignments, &report.bars}) {
    for (const ReportEntry& entry : *list) {
      open_group(out, kPalette[group_index % kPaletteSize], style.stroke_width);
      for (const int id : entry.members) append_line(out, lookup(id));
      out += "  </g>\n";
      ++group_index;
    }
  }

  out += "</svg>\n";
  return out;
}

}  // namespace gestalt
