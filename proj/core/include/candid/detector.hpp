#pragma once

#include <cstdint>
#include <vector>

#include "candid/model.hpp"
#include "candid/params.hpp"
#include "candid/plane.hpp"

namespace candid {

// Distances from one pixel's intensity to its background samples.
struct DistanceVector {
    std::vector<int> db;  // |intensity - sample_i|, model order
    std::vector<int> fs;  // db sorted ascending
    double mp = 0.0;      // mean of db

    friend bool operator==(const DistanceVector&, const DistanceVector&) = default;
};

// db, fs and mp for intensity against the pixel's current samples.
DistanceVector pixel_distances(std::uint8_t intensity, std::span<const std::uint8_t> samples);

// Reuse-friendly variant; out vectors are resized as needed.
void pixel_distances_into(std::uint8_t intensity, std::span<const std::uint8_t> samples,
                          DistanceVector& out);

// cd = mp * (median of lower half of fs + median of upper half of fs)
//      / (2 * 255^2). fs splits into two halves of n/2 (n is even); the
// median of an odd-length half is its middle element, of an even-length half
// the mean of the two middle elements. Always lands in [0, 1].
double change_dynamics(const DistanceVector& dv);

// r0 + gamma when cd exceeds xi, plain r0 otherwise. Never cumulative.
double adapt_threshold(double r0, double cd, double gamma, double xi);

// t = 2 when cd exceeds xi; otherwise 1/cd clamped into [t_min, t_max]
// (cd == 0 maps to t_max). The dynamic-branch value 2 is also clamped so t
// stays inside the configured bounds.
double adapt_update_rate(double cd, double xi, double t_min, double t_max);

struct PixelClassification {
    std::uint8_t label = 0;  // 1 = foreground
    int matches = 0;         // samples with db strictly below r
};

// Foreground when fewer than min_matches samples fall strictly inside r.
PixelClassification classify_pixel(const std::vector<int>& db, double r, int min_matches);

// Per-frame scratch shared between detect and update passes.
struct DetectScratch {
    RealPlane cd;                          // change dynamics per pixel
    std::vector<std::uint16_t> min_index;  // argmin of db per pixel, lowest on ties
    std::vector<std::uint16_t> max_index;  // argmax of db per pixel, lowest on ties
    std::vector<std::int32_t> matches;     // strict within-threshold count per pixel

    void reset(int width, int height);
};

// Classify a preprocessed frame. Per pixel: distances, change dynamics,
// threshold adaptation, classification against the adapted threshold, update
// rate adaptation. Mutates only state.r and state.t; samples and history are
// untouched. Fills scratch for the subsequent update pass.
MaskFrame detect_frame(ModelState& state, const Frame& frame, const Params& params,
                       DetectScratch& scratch);

}  // namespace candid
