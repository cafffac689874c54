#include "candid/frame_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace candid {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw DataError(path.string() + ": " + what);
}

struct PnmHeader {
    bool color = false;  // P6
    int width = 0;
    int height = 0;
};

// Header token reader: PNM allows `#` comments and arbitrary whitespace
// between header fields.
int read_header_int(std::istream& in, const std::filesystem::path& path, const char* field) {
    int c = in.get();
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c)) fail(path, std::string("bad header: expected ") + field);
    long value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > 1 << 24) fail(path, std::string("bad header: ") + field + " out of range");
        c = in.get();
    }
    if (c != EOF) in.unget();
    return static_cast<int>(value);
}

PnmHeader read_pnm_header(std::istream& in, const std::filesystem::path& path) {
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
        fail(path, "not a binary PGM/PPM file (magic must be P5 or P6)");
    PnmHeader header;
    header.color = magic[1] == '6';
    header.width = read_header_int(in, path, "width");
    header.height = read_header_int(in, path, "height");
    int maxval = read_header_int(in, path, "maxval");
    if (header.width < 1 || header.height < 1) fail(path, "bad header: non-positive dimensions");
    if (maxval != kMaxIntensity) fail(path, "unsupported maxval " + std::to_string(maxval));
    int c = in.get();  // single whitespace byte separates header from pixels
    if (c == EOF || !std::isspace(c)) fail(path, "bad header: missing pixel-data separator");
    return header;
}

PnmHeader open_and_read_header(std::ifstream& in, const std::filesystem::path& path) {
    in.open(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    return read_pnm_header(in, path);
}

}  // namespace

std::uint8_t luma_rec601(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    double y = 0.299 * r + 0.587 * g + 0.114 * b;
    return static_cast<std::uint8_t>(y + 0.5);  // round half up; y stays within [0, 255]
}

Frame read_frame(const std::filesystem::path& path) {
    std::ifstream in;
    PnmHeader header = open_and_read_header(in, path);
    Frame frame(header.width, header.height);
    std::size_t pixels = frame.size();
    if (!header.color) {
        in.read(reinterpret_cast<char*>(frame.data()), static_cast<std::streamsize>(pixels));
        if (static_cast<std::size_t>(in.gcount()) != pixels) fail(path, "truncated pixel data");
    } else {
        std::vector<std::uint8_t> rgb(pixels * 3);
        in.read(reinterpret_cast<char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
        if (static_cast<std::size_t>(in.gcount()) != rgb.size()) fail(path, "truncated pixel data");
        for (std::size_t i = 0; i < pixels; ++i)
            frame[i] = luma_rec601(rgb[i * 3], rgb[i * 3 + 1], rgb[i * 3 + 2]);
    }
    return frame;
}

void write_frame(const Frame& frame, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "P5\n" << frame.width() << ' ' << frame.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.data()),
              static_cast<std::streamsize>(frame.size()));
    if (!out) fail(path, "write failed");
}

void write_mask(const MaskFrame& mask, const std::filesystem::path& path) {
    Frame image(mask.width(), mask.height());
    for (std::size_t i = 0; i < mask.size(); ++i)
        image[i] = mask[i] ? kMaxIntensity : 0;
    write_frame(image, path);
}

MaskFrame read_mask(const std::filesystem::path& path) {
    Frame image = read_frame(path);
    MaskFrame mask(image.width(), image.height());
    for (std::size_t i = 0; i < image.size(); ++i) {
        if (image[i] != 0 && image[i] != kMaxIntensity)
            fail(path, "mask value " + std::to_string(image[i]) + " at pixel " + std::to_string(i) +
                           " (must be 0 or 255)");
        mask[i] = image[i] ? 1 : 0;
    }
    return mask;
}

GroundTruthFrame read_ground_truth(const std::filesystem::path& path) {
    std::ifstream in;
    PnmHeader header = open_and_read_header(in, path);
    if (header.color) fail(path, "ground truth must be single-channel (P5)");
    GroundTruthFrame gt(header.width, header.height);
    std::size_t pixels = gt.size();
    in.read(reinterpret_cast<char*>(gt.data()), static_cast<std::streamsize>(pixels));
    if (static_cast<std::size_t>(in.gcount()) != pixels) fail(path, "truncated pixel data");
    for (std::size_t i = 0; i < pixels; ++i) {
        std::uint8_t v = gt[i];
        if (v != 0 && v != 50 && v != 85 && v != 170 && v != 255)
            fail(path, "illegal ground-truth label " + std::to_string(v) + " at pixel " +
                           std::to_string(i));
    }
    return gt;
}

bool glob_match(std::string_view pattern, std::string_view name) {
    std::size_t p = 0, n = 0;
    std::size_t star = std::string_view::npos, star_n = 0;
    while (n < name.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
            ++p;
            ++n;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            star_n = n;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            n = ++star_n;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

std::vector<std::filesystem::path> list_files(const std::filesystem::path& dir,
                                              std::string_view pattern) {
    if (!std::filesystem::is_directory(dir)) throw DataError(dir.string() + ": not a directory");
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (glob_match(pattern, entry.path().filename().string())) paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) {
        return a.filename().string() < b.filename().string();
    });
    return paths;
}

FrameSequence FrameSequence::open(const std::filesystem::path& dir, std::string_view pattern) {
    FrameSequence seq;
    seq.paths_ = list_files(dir, pattern);
    if (seq.paths_.empty())
        throw DataError(dir.string() + ": no frames matching '" + std::string(pattern) + "'");
    for (std::size_t i = 0; i < seq.paths_.size(); ++i) {
        std::ifstream in;
        PnmHeader header = open_and_read_header(in, seq.paths_[i]);
        if (i == 0) {
            seq.width_ = header.width;
            seq.height_ = header.height;
        } else if (header.width != seq.width_ || header.height != seq.height_) {
            fail(seq.paths_[i], "dimension mismatch: " + std::to_string(header.width) + "x" +
                                    std::to_string(header.height) + " vs " +
                                    std::to_string(seq.width_) + "x" + std::to_string(seq.height_) +
                                    " from " + seq.paths_[0].filename().string());
        }
    }
    return seq;
}

Frame FrameSequence::at(std::size_t i) const { return read_frame(paths_[i]); }

}  // namespace candid
