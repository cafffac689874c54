#include "candid/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kv_util.hpp"

namespace candid {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", s);
    return buf;
}

std::string format_fps(double fps) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", fps);
    return buf;
}

void require_min_frames(std::size_t have, const Params& params) {
    const std::size_t need = static_cast<std::size_t>(params.warmup_frames()) + 1;
    if (have < need)
        throw DataError("sequence has " + std::to_string(have) + " frames; need at least f_n + n + 1 = " +
                        std::to_string(need) + " for one detection frame");
}

}  // namespace

Engine::Engine(const Params& params, int width, int height)
    : params_(params), width_(width), height_(height), mtg_acc_(width, height) {
    params_.validate();
    if (width < 1 || height < 1)
        throw DataError("engine needs positive frame dimensions, got " + std::to_string(width) +
                        "x" + std::to_string(height));
}

void Engine::finish_warmup() {
    std::vector<Frame> seed_frames(recent_frames_.begin(), recent_frames_.end());
    init_recent_history(state_, seed_frames);
    recent_frames_.clear();
}

MaskFrame Engine::process(const Frame& raw) {
    if (raw.width() != width_ || raw.height() != height_)
        throw DataError("frame is " + std::to_string(raw.width()) + "x" +
                        std::to_string(raw.height()) + " but the engine was opened at " +
                        std::to_string(width_) + "x" + std::to_string(height_));

    auto filter_start = Clock::now();
    Frame frame = median_filter(raw, {params_.median_window});
    timings_.filter += seconds_since(filter_start);

    const std::int64_t k = ++frames_seen_;  // 1-based
    if (k <= params_.warmup_frames()) {
        if (k <= params_.f_n) {
            if (k > 1) accumulate_mtg(prev_frame_, frame, mtg_acc_);
            prev_frame_ = frame;
            if (k == params_.f_n) {
                ParamPlanes planes;
                planes.mtg = finalize_mtg(mtg_acc_, params_.f_n);
                planes.r0 = init_threshold_plane(planes.mtg, params_.alpha);
                planes.t0 = init_update_rate_plane(planes.mtg, params_.beta, params_.t_min,
                                                   params_.t_max);
                state_ = make_model_state(params_, std::move(planes));
                prev_frame_ = Frame();
            }
        } else {
            set_background_sample(state_, static_cast<int>(k - params_.f_n - 1), frame);
        }
        recent_frames_.push_back(std::move(frame));
        if (static_cast<int>(recent_frames_.size()) > params_.rhm_len) recent_frames_.pop_front();
        if (k == params_.warmup_frames()) finish_warmup();
        return MaskFrame(width_, height_);  // warm-up: all background
    }

    auto detect_start = Clock::now();
    MaskFrame mask = detect_frame(state_, frame, params_, scratch_);
    timings_.detect += seconds_since(detect_start);

    auto update_start = Clock::now();
    update_frame(state_, frame, mask, scratch_);
    timings_.update += seconds_since(update_start);
    return mask;
}

std::string format_run_report(const RunReport& report, bool with_timing) {
    std::ostringstream out;
    out << "frames = " << report.frames << '\n';
    out << "warmup_frames = " << report.warmup_frames << '\n';
    out << "width = " << report.width << '\n';
    out << "height = " << report.height << '\n';
    out << "masks_written = " << report.masks_written << '\n';
    for (const auto& [key, value] : report.params.echo()) out << key << " = " << value << '\n';
    if (with_timing) {
        out << "seconds_total = " << format_seconds(report.seconds_total) << '\n';
        out << "seconds_compute = " << format_seconds(report.seconds_compute) << '\n';
        out << "fps_total = " << format_fps(report.fps_total) << '\n';
        out << "fps_compute = " << format_fps(report.fps_compute) << '\n';
    }
    return out.str();
}

RunReport run_pipeline(const Params& params, const std::filesystem::path& input_dir,
                       const std::filesystem::path& output_dir, const std::string& pattern) {
    params.validate();
    FrameSequence seq = FrameSequence::open(input_dir, pattern);
    require_min_frames(seq.size(), params);
    std::filesystem::create_directories(output_dir);

    auto total_start = Clock::now();
    Engine engine(params, seq.width(), seq.height());
    char name[32];
    for (std::size_t i = 0; i < seq.size(); ++i) {
        MaskFrame mask = engine.process(seq.at(i));
        std::snprintf(name, sizeof(name), "bin%06lld.pgm", static_cast<long long>(i + 1));
        write_mask(mask, output_dir / name);
    }

    RunReport report;
    report.width = seq.width();
    report.height = seq.height();
    report.frames = static_cast<std::int64_t>(seq.size());
    report.warmup_frames = params.warmup_frames();
    report.masks_written = static_cast<std::int64_t>(seq.size());
    report.seconds_total = seconds_since(total_start);
    const StageTimings& t = engine.timings();
    report.seconds_compute = t.filter + t.detect + t.update;
    report.fps_total = report.seconds_total > 0 ? report.frames / report.seconds_total : 0.0;
    report.fps_compute = report.seconds_compute > 0 ? report.frames / report.seconds_compute : 0.0;
    report.params = params;

    std::ofstream out(output_dir / "report.txt", std::ios::binary);
    if (!out) throw DataError((output_dir / "report.txt").string() + ": cannot open for writing");
    out << format_run_report(report, false);
    if (!out) throw DataError((output_dir / "report.txt").string() + ": write failed");
    return report;
}

BenchResult run_bench(const Params& params, const std::filesystem::path& input_dir,
                      int repetitions, const std::string& pattern) {
    params.validate();
    if (repetitions < 1) throw ConfigError("repetitions must be positive");
    FrameSequence seq = FrameSequence::open(input_dir, pattern);
    require_min_frames(seq.size(), params);

    std::vector<Frame> frames;
    frames.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) frames.push_back(seq.at(i));

    BenchResult result;
    result.width = seq.width();
    result.height = seq.height();
    result.frames = static_cast<std::int64_t>(frames.size());
    for (int rep = 0; rep < repetitions; ++rep) {
        Engine engine(params, seq.width(), seq.height());
        auto start = Clock::now();
        for (const Frame& frame : frames) engine.process(frame);
        double elapsed = seconds_since(start);
        result.fps_samples.push_back(elapsed > 0 ? result.frames / elapsed : 0.0);
        result.timings.filter += engine.timings().filter;
        result.timings.detect += engine.timings().detect;
        result.timings.update += engine.timings().update;
    }

    std::vector<double> sorted = result.fps_samples;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    result.fps_median =
        sorted.size() % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
    return result;
}

std::string format_bench_result(const BenchResult& result) {
    std::ostringstream out;
    out << "resolution = " << result.width << "x" << result.height << '\n';
    out << "frames = " << result.frames << '\n';
    for (std::size_t i = 0; i < result.fps_samples.size(); ++i)
        out << "rep_" << (i + 1) << "_fps = " << format_fps(result.fps_samples[i]) << '\n';
    out << "median_fps = " << format_fps(result.fps_median) << '\n';
    out << "filter_seconds = " << format_seconds(result.timings.filter) << '\n';
    out << "detect_seconds = " << format_seconds(result.timings.detect) << '\n';
    out << "update_seconds = " << format_seconds(result.timings.update) << '\n';
    return out.str();
}

}  // namespace candid
