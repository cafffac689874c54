#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "candid/plane.hpp"

namespace candid {

// Rec.601 luma with round-half-up. Used when decoding color (P6) input.
std::uint8_t luma_rec601(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Decode a binary PGM (P5) or PPM (P6, converted to gray via luma_rec601).
// maxval must be 255. Errors name the offending file.
Frame read_frame(const std::filesystem::path& path);

// Encode as binary PGM: "P5\n<w> <h>\n255\n" + raw bytes.
void write_frame(const Frame& frame, const std::filesystem::path& path);

// Binary mask I/O. On disk foreground is 255 and background 0; in memory the
// labels are {0, 1}. write_mask / read_mask round-trip bit-exactly.
void write_mask(const MaskFrame& mask, const std::filesystem::path& path);
MaskFrame read_mask(const std::filesystem::path& path);

// Ground-truth labels use the change-detection convention:
// 0 background, 50 hard shadow, 85 outside ROI, 170 unknown, 255 foreground.
// Any other value is a load error reporting the value and pixel index.
GroundTruthFrame read_ground_truth(const std::filesystem::path& path);

// Shell-style filename match supporting `*` and `?`.
bool glob_match(std::string_view pattern, std::string_view name);

// Files in `dir` matching `pattern`, sorted lexicographically by filename.
std::vector<std::filesystem::path> list_files(const std::filesystem::path& dir,
                                              std::string_view pattern);

// An ordered on-disk frame sequence. Matching files sort lexicographically,
// which is taken as temporal order. All frames must share one geometry
// (validated against the headers at open time); pixel data is decoded on
// demand so only the frames in flight stay resident.
class FrameSequence {
public:
    static FrameSequence open(const std::filesystem::path& dir, std::string_view pattern);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return paths_.size(); }

    Frame at(std::size_t i) const;
    const std::filesystem::path& path_of(std::size_t i) const { return paths_[i]; }

private:
    FrameSequence() = default;

    std::vector<std::filesystem::path> paths_;
    int width_ = 0;
    int height_ = 0;
};

}  // namespace candid
