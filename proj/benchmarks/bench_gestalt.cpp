#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "gestalt/chain_detector.hpp"
#include "gestalt/nfa.hpp"
#include "gestalt/pipeline.hpp"
#include "gestalt/simulation.hpp"
#include "gestalt/tip_index.hpp"

namespace {

std::vector<gestalt::LineSegment> null_sample(int n_segments, std::uint64_t seed) {
  gestalt::H0Config config;
  config.n_segments = n_segments;
  config.domain = {512, 512};
  config.seed = seed;
  return gestalt::sample_h0(config, 0);
}

void BM_LogNfaGoodContinuation(benchmark::State& state) {
  const gestalt::ImageDomain domain{512, 512};
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gestalt::log_nfa_good_continuation(100, k, 7.5, 0.4, domain).value);
  }
}
BENCHMARK(BM_LogNfaGoodContinuation)->Arg(2)->Arg(8)->Arg(32);

void BM_TipIndexQuery(benchmark::State& state) {
  const std::vector<gestalt::LineSegment> segments =
      null_sample(static_cast<int>(state.range(0)), 99);
  const gestalt::TipIndex index(segments, 10.0);
  std::vector<gestalt::TipRef> hits;
  std::size_t cursor = 0;
  for (auto _ : state) {
    const gestalt::Point center = segments[cursor % segments.size()].a;
    cursor++;
    hits.clear();
    index.query_disk(center, 12.0, hits);
    benchmark::DoNotOptimize(hits.size());
  }
}
BENCHMARK(BM_TipIndexQuery)->Arg(100)->Arg(1000);

void BM_DetectGoodContinuations(benchmark::State& state) {
  const std::vector<gestalt::LineSegment> segments =
      null_sample(static_cast<int>(state.range(0)), 7);
  const gestalt::ImageDomain domain{512, 512};
  const gestalt::Params params = gestalt::Params::defaults(domain);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gestalt::detect_good_continuations(segments, params, domain).size());
  }
}
BENCHMARK(BM_DetectGoodContinuations)->Arg(50)->Arg(100)->Arg(200);

void BM_DetectAll(benchmark::State& state) {
  const std::vector<gestalt::LineSegment> segments =
      null_sample(static_cast<int>(state.range(0)), 7);
  const gestalt::ImageDomain domain{512, 512};
  const gestalt::Params params = gestalt::Params::defaults(domain);
  for (auto _ : state) {
    const gestalt::DetectionSet detections =
        gestalt::detect_all(segments, params, domain, gestalt::kAllKinds);
    benchmark::DoNotOptimize(detections.bars.size());
  }
}
BENCHMARK(BM_DetectAll)->Arg(100);

void BM_Calibrate(benchmark::State& state) {
  gestalt::H0Config config;
  config.n_segments = 50;
  config.domain = {512, 512};
  config.trials = 2;
  config.seed = 3;
  const gestalt::Params params = gestalt::Params::defaults(config.domain);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gestalt::calibrate(config, params).trials);
  }
}
BENCHMARK(BM_Calibrate);

}  // namespace

BENCHMARK_MAIN();
