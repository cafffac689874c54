#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace candid {

// Problems with user-supplied configuration (bad keys, bad values, invalid
// parameter combinations). The CLI maps these to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problems with input data (missing files, undecodable frames, dimension
// mismatches, label violations). The CLI maps these to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxIntensity = 255;  // 8-bit dynamic range

// Row-major 2D buffer. (x, y) indexing with x = column, y = row;
// flat index = y * width + x.
template <typename T>
class Plane {
public:
    Plane() = default;
    Plane(int width, int height, T fill = T{})
        : width_(width),
          height_(height),
          data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    T& at(int x, int y) { return data_[index(x, y)]; }
    const T& at(int x, int y) const { return data_[index(x, y)]; }

    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    T* begin() { return data_.data(); }
    T* end() { return data_.data() + data_.size(); }
    const T* begin() const { return data_.data(); }
    const T* end() const { return data_.data() + data_.size(); }

    bool same_dims(const Plane& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const Plane&, const Plane&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

using Frame = Plane<std::uint8_t>;             // grayscale intensities
using MaskFrame = Plane<std::uint8_t>;         // labels: 0 background, 1 foreground
using GroundTruthFrame = Plane<std::uint8_t>;  // labels: {0, 50, 85, 170, 255}
using RealPlane = Plane<double>;

}  // namespace candid
