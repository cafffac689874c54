#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "candid/plane.hpp"

namespace candid {

enum class BackgroundKind { constant, noise, oscillating };

struct BackgroundSpec {
    BackgroundKind kind = BackgroundKind::constant;
    int value = 120;    // base intensity
    double sigma = 0.0; // noise only
    int value2 = 0;     // oscillating only
    int period = 2;     // oscillating only, frames per full cycle

    double mean() const;
};

// Rectangular region with its own background, painted over the base.
struct RegionSpec {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;
    BackgroundSpec background;
};

// Rectangle moving at constant integer velocity, reflecting off the frame
// edges. Positions are closed-form per frame, so paths never leave bounds.
struct ObjectSpec {
    int intensity = 250;
    int width = 0;
    int height = 0;
    int start_x = 0;
    int start_y = 0;
    int vel_x = 0;
    int vel_y = 0;

    // Top-left corner at frame_index (0-based).
    std::pair<int, int> position(std::int64_t frame_index, int frame_width,
                                 int frame_height) const;
};

struct SceneSpec {
    int width = 0;
    int height = 0;
    int length = 0;  // frame count
    std::uint64_t seed = 1;
    double min_contrast = 20.0;  // required |object - local background mean|
    BackgroundSpec background;
    std::vector<RegionSpec> regions;
    std::vector<ObjectSpec> objects;

    void validate() const;  // throws ConfigError
};

// key = value file with `#` comments; every key carries the `scene.` prefix
// (see README for the full key list). Throws ConfigError.
SceneSpec load_scene_spec(const std::filesystem::path& path);
SceneSpec parse_scene_spec(std::istream& in, const std::string& origin);

struct SynthStats {
    std::int64_t frames = 0;
    std::int64_t pixels = 0;
    std::int64_t clamped = 0;  // noise samples clipped at 0 or 255

    double clamp_rate() const { return pixels > 0 ? double(clamped) / double(pixels) : 0.0; }
};

// Render frame `index` (0-based) and its ground truth (255 on object pixels,
// 0 elsewhere). Deterministic: the noise stream is re-derived per frame from
// spec.seed and the index.
void render_frame(const SceneSpec& spec, std::int64_t index, Frame& frame,
                  GroundTruthFrame& gt, SynthStats& stats);

// Write in%06d.pgm under frames_dir and gt%06d.pgm under gt_dir, indices
// starting at 1. Creates the directories. Throws DataError on I/O failure.
SynthStats generate(const SceneSpec& spec, const std::filesystem::path& frames_dir,
                    const std::filesystem::path& gt_dir);

}  // namespace candid
