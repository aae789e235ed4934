#include "gestalt/simulation.hpp"

#include <random>
#include <stdexcept>

#include "gestalt/pipeline.hpp"

namespace gestalt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits of the engine output; the
// mapping is pinned here because the standard library's distribution objects
// are implementation-defined.
double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

void validate(const H0Config& config) {
  if (config.n_segments < 2) throw std::invalid_argument("h0: segment count must be >= 2");
  if (config.trials < 1) throw std::invalid_argument("h0: trials must be >= 1");
  if (config.domain.m < 1 || config.domain.n < 1) {
    throw std::invalid_argument("h0: image domain must be at least 1x1");
  }
}

}  // namespace

std::vector<LineSegment> sample_h0(const H0Config& config, int trial_index) {
  validate(config);
  // Per-trial generator derived from (seed, trial), so trials are independent
  // of each other and of scheduling.
  std::mt19937_64 engine(
      splitmix64(config.seed + 0x9e3779b97f4a7c15ULL *
                                   (static_cast<std::uint64_t>(trial_index) + 1ULL)));
  const double m = static_cast<double>(config.domain.m);
  const double n = static_cast<double>(config.domain.n);

  std::vector<LineSegment> segments;
  segments.reserve(config.n_segments);
  for (int i = 0; i < config.n_segments; ++i) {
    LineSegment s;
    s.id = i;
    s.a = {uniform01(engine) * m, uniform01(engine) * n};
    do {
      s.b = {uniform01(engine) * m, uniform01(engine) * n};
    } while (s.b.x == s.a.x && s.b.y == s.a.y);
    segments.push_back(s);
  }
  return segments;
}

CalibrationResult calibrate(const H0Config& config, const Params& params) {
  validate(config);
  params.validate();

  long long totals[3] = {0, 0, 0};
  int maxima[3] = {0, 0, 0};
  for (int trial = 0; trial < config.trials; ++trial) {
    const std::vector<LineSegment> segments = sample_h0(config, trial);
    const DetectionSet detections = detect_all(segments, params, config.domain);
    const int counts[3] = {static_cast<int>(detections.good_continuations.size()),
                           static_cast<int>(detections.alignments.size()),
                           static_cast<int>(detections.bars.size())};
    for (int kind = 0; kind < 3; ++kind) {
      totals[kind] += counts[kind];
      maxima[kind] = std::max(maxima[kind], counts[kind]);
    }
  }

  const auto tally = [&](int kind) {
    return KindTally{static_cast<double>(totals[kind]) / config.trials, maxima[kind]};
  };
  CalibrationResult result;
  result.good_continuations = tally(0);
  result.alignments = tally(1);
  result.bars = tally(2);
  result.trials = config.trials;
  return result;
}

}  // namespace gestalt
