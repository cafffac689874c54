#include <benchmark/benchmark.h>

#include <vector>

#include "candid/detector.hpp"
#include "candid/median_filter.hpp"
#include "candid/model.hpp"
#include "candid/params.hpp"
#include "candid/pipeline.hpp"
#include "candid/rng.hpp"
#include "candid/synth.hpp"
#include "candid/updater.hpp"

namespace {

candid::Frame random_frame(int width, int height, std::uint64_t seed) {
    candid::Frame frame(width, height);
    candid::SplitMix64 rng(seed);
    for (std::size_t i = 0; i < frame.size(); ++i)
        frame[i] = static_cast<std::uint8_t>(rng.next_u64() & 0xFF);
    return frame;
}

candid::Params bench_params() {
    candid::Params params;
    params.f_n = 20;
    params.n = 10;
    return params;
}

// A scene busy enough that detection sees mixed static/dynamic pixels.
candid::SceneSpec bench_scene(int width, int height, int length) {
    candid::SceneSpec spec;
    spec.width = width;
    spec.height = height;
    spec.length = length;
    spec.seed = 11;
    spec.background.kind = candid::BackgroundKind::noise;
    spec.background.value = 120;
    spec.background.sigma = 2.0;
    candid::ObjectSpec object;
    object.intensity = 250;
    object.width = width / 8;
    object.height = height / 8;
    object.start_x = 2;
    object.start_y = 2;
    object.vel_x = 1;
    object.vel_y = 1;
    spec.objects.push_back(object);
    return spec;
}

std::vector<candid::Frame> scene_frames(const candid::SceneSpec& spec) {
    std::vector<candid::Frame> frames;
    frames.reserve(spec.length);
    candid::Frame frame;
    candid::GroundTruthFrame gt;
    candid::SynthStats stats;
    for (int k = 0; k < spec.length; ++k) {
        candid::render_frame(spec, k, frame, gt, stats);
        frames.push_back(frame);
    }
    return frames;
}

// Engine warmed past initialization so detect/update run on a live model.
struct WarmEngine {
    candid::Params params = bench_params();
    candid::Engine engine;
    std::vector<candid::Frame> frames;
    std::size_t next = 0;

    explicit WarmEngine(int width, int height)
        : engine(params, width, height),
          frames(scene_frames(bench_scene(width, height, params.warmup_frames() + 32))) {
        for (int k = 0; k < params.warmup_frames(); ++k) engine.process(frames[k]);
        next = params.warmup_frames();
    }

    const candid::Frame& next_frame() {
        const candid::Frame& frame = frames[next];
        next = next + 1 < frames.size() ? next + 1 : frames.size() - 32;
        return frame;
    }
};

void BM_MedianFilter(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    candid::Frame frame = random_frame(side, side, 5);
    for (auto _ : state) benchmark::DoNotOptimize(candid::median_filter(frame, {7}));
    state.SetItemsProcessed(state.iterations() * frame.size());
}
BENCHMARK(BM_MedianFilter)->Arg(64)->Arg(240)->Arg(480);

void BM_DetectFrame(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    WarmEngine warm(side, side);
    candid::ModelState model = warm.engine.state();
    candid::DetectScratch scratch;
    const candid::Frame& frame = warm.frames.back();
    for (auto _ : state)
        benchmark::DoNotOptimize(candid::detect_frame(model, frame, warm.params, scratch));
    state.SetItemsProcessed(state.iterations() * frame.size());
}
BENCHMARK(BM_DetectFrame)->Arg(64)->Arg(240);

void BM_UpdateFrame(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    WarmEngine warm(side, side);
    candid::ModelState model = warm.engine.state();
    candid::DetectScratch scratch;
    const candid::Frame& frame = warm.frames.back();
    candid::MaskFrame mask = candid::detect_frame(model, frame, warm.params, scratch);
    for (auto _ : state) {
        candid::update_frame(model, frame, mask, scratch);
        benchmark::DoNotOptimize(model);
    }
    state.SetItemsProcessed(state.iterations() * frame.size());
}
BENCHMARK(BM_UpdateFrame)->Arg(64)->Arg(240);

void BM_EnginePerFrame(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    WarmEngine warm(side, side);
    for (auto _ : state) benchmark::DoNotOptimize(warm.engine.process(warm.next_frame()));
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_EnginePerFrame)->Arg(64)->Arg(240)->Arg(320);

}  // namespace

BENCHMARK_MAIN();
