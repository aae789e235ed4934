#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gestalt/io.hpp"
#include "gestalt/pipeline.hpp"

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct RunConfig {
  std::string input;
  int m = 0;
  int n = 0;
  bool have_m = false;
  bool have_n = false;
  double rho = 0.0;
  bool have_rho = false;
  double theta_s_deg = 150.0;
  double lambda = 2.0;
  double epsilon = 1.0;
  double bar_tol_deg = 3.0;
  std::string types = "good-continuations,alignments,bars";
  std::string report_path;
  std::string svg_path;
  std::uint64_t seed = 0;
  int trials = 0;
  int segments = 0;
  int k_max = 64;
  bool print_config = false;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (const char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

bool parse_types(const std::string& text, unsigned& kinds, std::string& bad) {
  kinds = 0;
  for (const std::string& part : split(text, ',')) {
    if (part == "good-continuations") {
      kinds |= gestalt::kGoodContinuations;
    } else if (part == "alignments") {
      kinds |= gestalt::kAlignments;
    } else if (part == "bars") {
      kinds |= gestalt::kBars;
    } else {
      bad = part;
      return false;
    }
  }
  return true;
}

gestalt::Params effective_params(const RunConfig& config, const gestalt::ImageDomain& domain) {
  gestalt::Params params = gestalt::Params::defaults(domain);
  if (config.have_rho) params.rho = config.rho;
  params.theta_s = config.theta_s_deg * kDegToRad;
  params.lambda = config.lambda;
  params.epsilon = config.epsilon;
  params.bar_theta_tol = config.bar_tol_deg * kDegToRad;
  params.k_max = config.k_max;
  return params;
}

void print_effective_config(const char* subcommand, const RunConfig& config,
                            const gestalt::ImageDomain& domain, const gestalt::Params& params) {
  std::printf("subcommand: %s\n", subcommand);
  if (!config.input.empty()) std::printf("input: %s\n", config.input.c_str());
  std::printf("domain: %d x %d\n", domain.m, domain.n);
  std::printf("rho: %.6f\n", params.rho);
  std::printf("theta_s_deg: %.6f\n", params.theta_s / kDegToRad);
  std::printf("lambda: %.6f\n", params.lambda);
  std::printf("epsilon: %.6f\n", params.epsilon);
  std::printf("align_theta_deg: %.6f\n", params.align_theta / kDegToRad);
  std::printf("bar_theta_tol_deg: %.6f\n", params.bar_theta_tol / kDegToRad);
  std::printf("k_max: %d\n", params.k_max);
  std::printf("types: %s\n", config.types.c_str());
  if (config.trials > 0 || config.segments > 0) {
    std::printf("segments: %d\n", config.segments);
    std::printf("trials: %d\n", config.trials);
    std::printf("seed: %llu\n", static_cast<unsigned long long>(config.seed));
  }
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

int run_detect(const RunConfig& config) {
  std::ifstream in(config.input, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open input file '" << config.input << "'\n";
    return 1;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const gestalt::ParseResult parsed = gestalt::parse_segments(text);
  for (const gestalt::ParseDiagnostic& diag : parsed.diagnostics) {
    std::cerr << "warning: " << config.input << ":" << diag.line;
    if (diag.column > 0) std::cerr << ":" << diag.column;
    std::cerr << ": " << diag.message << "\n";
  }
  if (parsed.segments.empty()) {
    std::cerr << "error: no valid segments in '" << config.input << "'\n";
    return 1;
  }

  gestalt::ImageDomain domain{config.m, config.n};
  if (!config.have_m || !config.have_n) {
    double max_x = 0.0;
    double max_y = 0.0;
    for (const gestalt::LineSegment& s : parsed.segments) {
      max_x = std::max({max_x, s.a.x, s.b.x});
      max_y = std::max({max_y, s.a.y, s.b.y});
    }
    if (!config.have_m) domain.m = std::max(1, static_cast<int>(std::ceil(max_x)));
    if (!config.have_n) domain.n = std::max(1, static_cast<int>(std::ceil(max_y)));
    std::cerr << "warning: image dimensions not fully specified; using tip bounding box "
              << domain.m << " x " << domain.n << "\n";
  }

  unsigned kinds = 0;
  std::string bad_type;
  if (!parse_types(config.types, kinds, bad_type)) {
    std::cerr << "error: unknown detection type '" << bad_type << "'\n";
    return 1;
  }

  gestalt::Params params;
  try {
    params = effective_params(config, domain);
    params.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: invalid configuration: " << e.what() << "\n";
    return 1;
  }
  if (config.print_config) print_effective_config("detect", config, domain, params);

  const gestalt::DetectionSet detections =
      gestalt::detect_all(parsed.segments, params, domain, kinds);
  const gestalt::DetectionReport report =
      gestalt::build_report(parsed.segments, params, domain, detections);

  if (!config.report_path.empty() &&
      !write_file(config.report_path, gestalt::write_report(report))) {
    std::cerr << "error: cannot write report to '" << config.report_path << "'\n";
    return 1;
  }
  if (!config.svg_path.empty() &&
      !write_file(config.svg_path, gestalt::render_svg(parsed.segments, report))) {
    std::cerr << "error: cannot write drawing to '" << config.svg_path << "'\n";
    return 1;
  }

  std::printf("good_continuations: %zu\n", report.good_continuations.size());
  std::printf("alignments: %zu\n", report.alignments.size());
  std::printf("bars: %zu\n", report.bars.size());
  std::printf("residuals: %zu\n", report.residuals.size());
  return 0;
}

int run_calibrate(const RunConfig& config) {
  if (config.segments < 2) {
    std::cerr << "error: calibrate requires --segments >= 2\n";
    return 1;
  }
  if (config.trials < 1) {
    std::cerr << "error: calibrate requires --trials >= 1\n";
    return 1;
  }
  const gestalt::ImageDomain domain{config.m, config.n};

  gestalt::Params params;
  try {
    params = effective_params(config, domain);
    params.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: invalid configuration: " << e.what() << "\n";
    return 1;
  }
  if (config.print_config) print_effective_config("calibrate", config, domain, params);

  gestalt::H0Config h0;
  h0.n_segments = config.segments;
  h0.domain = domain;
  h0.trials = config.trials;
  h0.seed = config.seed;

  gestalt::CalibrationResult result;
  try {
    result = gestalt::calibrate(h0, params);
  } catch (const std::exception& e) {
    std::cerr << "error: calibration failed: " << e.what() << "\n";
    return 1;
  }

  const std::string summary = gestalt::write_calibration_summary(result, h0, params);
  if (config.report_path.empty()) {
    std::fputs(summary.c_str(), stdout);
  } else if (!write_file(config.report_path, summary)) {
    std::cerr << "error: cannot write summary to '" << config.report_path << "'\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groups line segments into good continuations, non-local alignments, and bars "
               "by keeping maximal chains whose expected false-alarm count under a uniform "
               "null model is below epsilon."};
  app.require_subcommand(1);

  RunConfig config;

  const auto add_common = [&config](CLI::App* cmd, bool domain_required) {
    auto* m_opt = cmd->add_option("-m,--width", config.m, "Image domain width in pixels");
    auto* n_opt = cmd->add_option("-n,--height", config.n, "Image domain height in pixels");
    if (domain_required) {
      m_opt->required();
      n_opt->required();
    }
    m_opt->check(CLI::PositiveNumber);
    n_opt->check(CLI::PositiveNumber);
    cmd->add_option("--rho", config.rho, "Max tip-to-tip gap in pixels (default min(10, ceil(0.1*max(m,n))))")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--theta-s", config.theta_s_deg,
                    "Search sector half-angle / max turn, degrees")
        ->capture_default_str();
    cmd->add_option("--lambda", config.lambda, "Sector dilation margin in pixels")
        ->capture_default_str();
    cmd->add_option("--epsilon", config.epsilon, "Meaningfulness threshold")
        ->capture_default_str();
    cmd->add_option("--bar-tol", config.bar_tol_deg,
                    "Allowed deviation of a bar pair from anti-parallel, degrees")
        ->capture_default_str();
    cmd->add_option("--k-max", config.k_max, "Chain length cap")->capture_default_str();
    cmd->add_flag("--print-config", config.print_config,
                  "Echo the effective configuration before running");
  };

  CLI::App* detect = app.add_subcommand("detect", "Detect gestalts in a segment file");
  detect->add_option("input", config.input, "Segment file: x1 y1 x2 y2 per line")->required();
  add_common(detect, false);
  detect->add_option("--types", config.types,
                     "Comma-separated kinds: good-continuations, alignments, bars")
      ->capture_default_str();
  detect->add_option("--report", config.report_path, "Write the JSON report to this path");
  detect->add_option("--svg", config.svg_path, "Write the SVG drawing to this path");

  CLI::App* calibrate = app.add_subcommand("calibrate", "Measure false-alarm counts under the null model");
  add_common(calibrate, true);
  calibrate->add_option("--segments", config.segments, "Segments per trial")->required();
  calibrate->add_option("--trials", config.trials, "Number of Monte Carlo trials")->required();
  calibrate->add_option("--seed", config.seed, "Random seed")->capture_default_str();
  calibrate->add_option("--report", config.report_path,
                        "Write the JSON summary to this path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  config.have_m = detect->count("-m") > 0 || calibrate->count("-m") > 0;
  config.have_n = detect->count("-n") > 0 || calibrate->count("-n") > 0;
  config.have_rho = detect->count("--rho") > 0 || calibrate->count("--rho") > 0;

  return app.got_subcommand(detect) ? run_detect(config) : run_calibrate(config);
}
