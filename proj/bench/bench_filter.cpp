// Compares the OpenMP filter and sequence kernels against the serial
// reference on 346x260 synthetic frames.

#include <benchmark/benchmark.h>

#include "oms/event.h"
#include "oms/oms.h"
#include "oms/synthetic.h"
#include "reference.h"

namespace {

const std::vector<oms::BinaryFrame> & frames()
{
  static const std::vector<oms::BinaryFrame> cached = [] {
    oms::SceneConfig c;
    c.n_frames = 32;
    c.bg_density = 0.05;
    c.camera_velocity = {1.0, 0.0};
    c.objects = {{oms::ObjectShape::disk, 40, {3.0, 1.0}, {90.0, 110.0}}};
    c.noise_rate = 20.0;
    const auto scene = oms::generate_scene(c);
    return oms::accumulate_frames(scene.events, scene.timestamps, c.geometry);
  }();
  return cached;
}

void BM_FilterReference(benchmark::State & state)
{
  const auto k = oms::make_feathered_kernel(static_cast<int>(state.range(0)), state.range(0) / 2.0);
  const auto & f = frames()[10];
  for (auto _ : state) {
    benchmark::DoNotOptimize(oms::reference::filter(f, k, 1, oms::FilterMode::dense));
  }
}

void BM_FilterOptimized(benchmark::State & state)
{
  const auto k = oms::make_feathered_kernel(static_cast<int>(state.range(0)), state.range(0) / 2.0);
  const auto & f = frames()[10];
  for (auto _ : state) {
    benchmark::DoNotOptimize(oms::filter_frame(f, k, 1, oms::FilterMode::dense));
  }
}

void BM_SequenceSerial(benchmark::State & state)
{
  const oms::OmsParams p;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oms::oms_sequence(frames(), p, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(frames().size()));
}

void BM_SequenceParallel(benchmark::State & state)
{
  const oms::OmsParams p;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oms::oms_sequence(frames(), p, static_cast<int>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(frames().size()));
}

}  // namespace

BENCHMARK(BM_FilterReference)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FilterOptimized)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SequenceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SequenceParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
