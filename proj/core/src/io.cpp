#include "gestalt/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace gestalt {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\v' || c == '\f' || c == '\r';
}

struct Token {
  std::string_view text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

bool parse_double(std::string_view text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

double round6(double v) {
  if (std::isinf(v)) return v;
  return std::nearbyint(v * 1e6) / 1e6;
}

void append_fixed(std::string& out, double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  out += buf;
}

// Reals carry fixed 6-decimal formatting; an NFA of zero serializes as the
// string "-inf" since JSON has no infinity literal.
void append_real(std::string& out, double v) {
  if (std::isinf(v) && v < 0.0) {
    out += "\"-inf\"";
    return;
  }
  append_fixed(out, v, 6);
}

void append_int_array(std::string& out, std::span<const int> values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(values[i]);
  }
  out += ']';
}

void append_bool_array(std::string& out, const std::vector<bool>& values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += values[i] ? "true" : "false";
  }
  out += ']';
}

void append_params(std::string& out, const Params& params) {
  out += "{\"rho\": ";
  append_real(out, params.rho);
  out += ", \"theta_s\": ";
  append_real(out, params.theta_s);
  out += ", \"lambda\": ";
  append_real(out, params.lambda);
  out += ", \"epsilon\": ";
  append_real(out, params.epsilon);
  out += ", \"align_theta\": ";
  append_real(out, params.align_theta);
  out += ", \"bar_theta_tol\": ";
  append_real(out, params.bar_theta_tol);
  out += ", \"k_max\": ";
  out += std::to_string(params.k_max);
  out += '}';
}

void append_entry(std::string& out, const ReportEntry& entry) {
  out += "{\"members\": ";
  append_int_array(out, entry.members);
  out += ", \"orientations\": ";
  append_bool_array(out, entry.orientations);
  out += ", \"k\": ";
  out += std::to_string(entry.k);
  out += ", \"d\": ";
  append_real(out, entry.d);
  out += ", \"theta\": ";
  append_real(out, entry.theta);
  out += ", \"log_nfa\": ";
  append_real(out, entry.log_nfa);
  if (!entry.elements.empty()) {
    out += ", \"elements\": [";
    for (std::size_t i = 0; i < entry.elements.size(); ++i) {
      if (i > 0) out += ", ";
      const ReportBarElement& el = entry.elements[i];
      out += "{\"source\": \"";
      out += el.source;
      out += "\", \"members\": ";
      append_int_array(out, el.members);
      out += ", \"forward\": ";
      out += el.forward ? "true" : "false";
      out += '}';
    }
    out += ']';
  }
  out += '}';
}

void append_entry_list(std::string& out, const char* key,
                       const std::vector<ReportEntry>& entries) {
  out += "  \"";
  out += key;
  out += "\": [";
  if (entries.empty()) {
    out += ']';
    return;
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out += i > 0 ? ",\n    " : "\n    ";
    append_entry(out, entries[i]);
  }
  out += "\n  ]";
}

ReportEntry chain_entry(const Detection& det) {
  ReportEntry entry;
  entry.k = static_cast<int>(det.chain.k());
  entry.d = round6(det.chain.d);
  entry.theta = round6(det.chain.theta);
  entry.log_nfa = round6(det.score.value);
  for (const DirectedSegment& link : det.chain.links) {
    entry.members.push_back(link.segment.id);
    entry.orientations.push_back(link.forward);
  }
  return entry;
}

ReportEntry bar_entry(const Detection& det, const std::vector<Detection>& operand_alignments) {
  ReportEntry entry;
  entry.k = static_cast<int>(det.chain.k());
  entry.d = round6(det.chain.d);
  entry.theta = round6(det.chain.theta);
  entry.log_nfa = round6(det.score.value);
  for (const DirectedSegment& link : det.chain.links) {
    ReportBarElement element;
    element.forward = link.forward;
    if (link.segment.id >= 0) {
      element.source = "segment";
      element.members = {link.segment.id};
    } else {
      const int alignment_index = -1 - link.segment.id;
      if (alignment_index < 0 ||
          alignment_index >= static_cast<int>(operand_alignments.size())) {
        throw std::invalid_argument("report: bar references unknown alignment operand");
      }
      element.source = "alignment";
      for (const DirectedSegment& member :
           operand_alignments[alignment_index].chain.links) {
        element.members.push_back(member.segment.id);
      }
    }
    entry.members.insert(entry.members.end(), element.members.begin(), element.members.end());
    entry.orientations.push_back(element.forward);
    entry.elements.push_back(std::move(element));
  }
  return entry;
}

double real_from_json(const nlohmann::json& value) {
  if (value.is_string()) {
    if (value.get<std::string>() == "-inf") {
      return -std::numeric_limits<double>::infinity();
    }
    throw std::runtime_error("unexpected string value");
  }
  return value.get<double>();
}

ReportEntry entry_from_json(const nlohmann::json& j) {
  ReportEntry entry;
  entry.members = j.at("members").get<std::vector<int>>();
  entry.orientations = j.at("orientations").get<std::vector<bool>>();
  entry.k = j.at("k").get<int>();
  entry.d = real_from_json(j.at("d"));
  entry.theta = real_from_json(j.at("theta"));
  entry.log_nfa = real_from_json(j.at("log_nfa"));
  if (j.contains("elements")) {
    for (const nlohmann::json& je : j.at("elements")) {
      ReportBarElement element;
      element.source = je.at("source").get<std::string>();
      element.members = je.at("members").get<std::vector<int>>();
      element.forward = je.at("forward").get<bool>();
      entry.elements.push_back(std::move(element));
    }
  }
  return entry;
}

}  // namespace

ParseResult parse_segments(std::string_view text) {
  ParseResult result;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    if (pos == text.size() && text.empty()) break;
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_number;
    if (pos > text.size() && line.empty()) break;  // no trailing empty line after final newline
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const std::vector<Token> tokens = tokenize(line);
    if (tokens.empty() || tokens.front().text.front() == '#') continue;

    if (tokens.size() < 4) {
      result.diagnostics.push_back(
          {line_number, 0,
           "expected at least 4 numeric fields, got " + std::to_string(tokens.size())});
      continue;
    }

    double fields[4];
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) {
      if (!parse_double(tokens[i].text, fields[i])) {
        result.diagnostics.push_back({line_number, tokens[i].column,
                                      "malformed numeric field '" +
                                          std::string(tokens[i].text) + "'"});
        ok = false;
      } else if (!std::isfinite(fields[i])) {
        result.diagnostics.push_back({line_number, tokens[i].column,
                                      "non-finite coordinate '" +
                                          std::string(tokens[i].text) + "'"});
        ok = false;
      }
    }
    if (!ok) continue;

    if (fields[0] == fields[2] && fields[1] == fields[3]) {
      result.diagnostics.push_back(
          {line_number, 0, "zero-length segment at line " + std::to_string(line_number)});
      continue;
    }

    LineSegment segment;
    segment.id = static_cast<int>(result.segments.size());
    segment.a = {fields[0], fields[1]};
    segment.b = {fields[2], fields[3]};
    result.segments.push_back(segment);
    std::vector<std::string> extras;
    for (std::size_t i = 4; i < tokens.size(); ++i) extras.emplace_back(tokens[i].text);
    result.extras.push_back(std::move(extras));
  }
  return result;
}

DetectionReport build_report(std::span<const LineSegment> segments, const Params& params,
                             const ImageDomain& domain, const DetectionSet& detections) {
  DetectionReport report;
  report.domain = domain;
  report.params = params;
  report.params.rho = round6(params.rho);
  report.params.theta_s = round6(params.theta_s);
  report.params.lambda = round6(params.lambda);
  report.params.epsilon = round6(params.epsilon);
  report.params.align_theta = round6(params.align_theta);
  report.params.bar_theta_tol = round6(params.bar_theta_tol);

  for (const Detection& det : detections.good_continuations) {
    report.good_continuations.push_back(chain_entry(det));
  }
  for (const Detection& det : detections.alignments) {
    report.alignments.push_back(chain_entry(det));
  }
  for (const Detection& det : detections.bars) {
    report.bars.push_back(bar_entry(det, detections.bar_operand_alignments));
  }

  std::set<int> covered;
  for (const std::vector<ReportEntry>* list :
       {&report.good_continuations, &report.alignments, &report.bars}) {
    for (const ReportEntry& entry : *list) {
      covered.insert(entry.members.begin(), entry.members.end());
    }
  }
  for (const LineSegment& s : segments) {
    if (!covered.contains(s.id)) report.residuals.push_back(s.id);
  }
  return report;
}

std::string write_report(const DetectionReport& report) {
  std::string out;
  out += "{\n";
  out += "  \"domain\": {\"m\": " + std::to_string(report.domain.m) +
         ", \"n\": " + std::to_string(report.domain.n) + "},\n";
  out += "  \"params\": ";
  append_params(out, report.params);
  out += ",\n";
  append_entry_list(out, "good_continuations", report.good_continuations);
  out += ",\n";
  append_entry_list(out, "alignments", report.alignments);
  out += ",\n";
  append_entry_list(out, "bars", report.bars);
  out += ",\n";
  out += "  \"residuals\": ";
  append_int_array(out, report.residuals);
  out += "\n}\n";
  return out;
}

DetectionReport parse_report(std::string_view text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    DetectionReport report;
    report.domain.m = j.at("domain").at("m").get<int>();
    report.domain.n = j.at("domain").at("n").get<int>();
    const nlohmann::json& p = j.at("params");
    report.params.rho = real_from_json(p.at("rho"));
    report.params.theta_s = real_from_json(p.at("theta_s"));
    report.params.lambda = real_from_json(p.at("lambda"));
    report.params.epsilon = real_from_json(p.at("epsilon"));
    report.params.align_theta = real_from_json(p.at("align_theta"));
    report.params.bar_theta_tol = real_from_json(p.at("bar_theta_tol"));
    report.params.k_max = p.at("k_max").get<int>();
    for (const nlohmann::json& je : j.at("good_continuations")) {
      report.good_continuations.push_back(entry_from_json(je));
    }
    for (const nlohmann::json& je : j.at("alignments")) {
      report.alignments.push_back(entry_from_json(je));
    }
    for (const nlohmann::json& je : j.at("bars")) {
      report.bars.push_back(entry_from_json(je));
    }
    report.residuals = j.at("residuals").get<std::vector<int>>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("report parse failed: ") + e.what());
  }
}

std::string write_calibration_summary(const CalibrationResult& result, const H0Config& config,
                                      const Params& params) {
  std::string out;
  out += "{\n";
  out += "  \"config\": {\"segments\": " + std::to_string(config.n_segments) +
         ", \"m\": " + std::to_string(config.domain.m) +
         ", \"n\": " + std::to_string(config.domain.n) +
         ", \"trials\": " + std::to_string(config.trials) +
         ", \"seed\": " + std::to_string(config.seed) + "},\n";
  out += "  \"params\": ";
  append_params(out, params);
  out += ",\n";
  const auto tally = [&out](const char* key, const KindTally& t, const char* suffix) {
    out += "  \"";
    out += key;
    out += "\": {\"mean\": ";
    append_real(out, t.mean);
    out += ", \"max\": " + std::to_string(t.max) + "}";
    out += suffix;
  };
  tally("good_continuations", result.good_continuations, ",\n");
  tally("alignments", result.alignments, ",\n");
  tally("bars", result.bars, ",\n");
  out += "  \"trials\": " + std::to_string(result.trials) + "\n";
  out += "}\n";
  return out;
}

}  // namespace gestalt
