#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <string>
#include <vector>

#include "candid/detector.hpp"
#include "candid/frame_io.hpp"
#include "candid/median_filter.hpp"
#include "candid/model.hpp"
#include "candid/params.hpp"
#include "candid/plane.hpp"
#include "candid/updater.hpp"

namespace candid {

// Cumulative wall time per pipeline stage, seconds.
struct StageTimings {
    double filter = 0.0;
    double detect = 0.0;
    double update = 0.0;
};

// Streaming driver for the full per-frame pipeline. Frames are fed in order,
// 1-based internally: frames 1..f_n accumulate the mean temporal gradient,
// frames f_n+1..f_n+n fill the background model, and every later frame runs
// detection plus the conditional update. Warm-up frames yield all-background
// masks. Every frame passes through the median filter first.
class Engine {
  public:
    Engine(const Params& params, int width, int height);

    MaskFrame process(const Frame& raw);

    std::int64_t frames_seen() const { return frames_seen_; }
    bool warmed_up() const { return frames_seen_ >= params_.warmup_frames(); }
    const Params& params() const { return params_; }
    const ModelState& state() const { return state_; }
    const StageTimings& timings() const { return timings_; }

  private:
    Params params_;
    int width_ = 0;
    int height_ = 0;
    std::int64_t frames_seen_ = 0;

    RealPlane mtg_acc_;
    Frame prev_frame_;
    std::deque<Frame> recent_frames_;  // last rhm_len filtered frames of warm-up

    ModelState state_;
    DetectScratch scratch_;
    StageTimings timings_;

    void finish_warmup();
};

struct RunReport {
    int width = 0;
    int height = 0;
    std::int64_t frames = 0;
    int warmup_frames = 0;
    std::int64_t masks_written = 0;
    double seconds_total = 0.0;    // includes decode and mask writing
    double seconds_compute = 0.0;  // filter + detect + update only
    double fps_total = 0.0;
    double fps_compute = 0.0;
    Params params;
};

// The deterministic part of a run report as `key = value` lines: dimensions,
// counts and the full resolved parameter echo. with_timing appends wall time
// and fps, which vary run to run and stay out of the on-disk report.
std::string format_run_report(const RunReport& report, bool with_timing);

// Process every frame in input_dir matching pattern, writing bin%06d.pgm
// masks (1-based) and report.txt to output_dir. Requires at least
// f_n + n + 1 frames. Throws ConfigError/DataError.
RunReport run_pipeline(const Params& params, const std::filesystem::path& input_dir,
                       const std::filesystem::path& output_dir,
                       const std::string& pattern = "*.p?m");

struct BenchResult {
    int width = 0;
    int height = 0;
    std::int64_t frames = 0;
    std::vector<double> fps_samples;  // compute fps per repetition
    double fps_median = 0.0;
    StageTimings timings;  // summed over repetitions
};

// Decode all frames up front, then time `repetitions` fresh engine passes
// over them (no mask output). Throws like run_pipeline.
BenchResult run_bench(const Params& params, const std::filesystem::path& input_dir,
                      int repetitions, const std::string& pattern = "*.p?m");

std::string format_bench_result(const BenchResult& result);

}  // namespace candid
