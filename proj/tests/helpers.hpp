#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "candid/plane.hpp"
#include "candid/rng.hpp"

namespace test {

// Self-deleting scratch directory under the system temp root.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        candid::SplitMix64 rng(static_cast<std::uint64_t>(stamp));
        path_ = std::filesystem::temp_directory_path() /
                ("candid_" + tag + "_" + std::to_string(rng.next_u64() & 0xFFFFFF));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  private:
    std::filesystem::path path_;
};

inline candid::Frame make_frame(int width, int height, std::initializer_list<int> values) {
    candid::Frame frame(width, height);
    std::size_t i = 0;
    for (int v : values) frame[i++] = static_cast<std::uint8_t>(v);
    return frame;
}

inline candid::Frame random_frame(int width, int height, candid::SplitMix64& rng) {
    candid::Frame frame(width, height);
    for (std::size_t i = 0; i < frame.size(); ++i)
        frame[i] = static_cast<std::uint8_t>(rng.next_u64() & 0xFF);
    return frame;
}

inline std::vector<char> read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace test
