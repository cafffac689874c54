#include "candid/detector.hpp"

#include <algorithm>
#include <cstdlib>

namespace candid {

namespace {

// Median of a sorted range; even lengths average the middle pair.
double sorted_median(const int* v, int len) {
    if (len % 2 == 1) return v[len / 2];
    return (v[len / 2 - 1] + v[len / 2]) / 2.0;
}

}  // namespace

void pixel_distances_into(std::uint8_t intensity, std::span<const std::uint8_t> samples,
                          DistanceVector& out) {
    const std::size_t n = samples.size();
    out.db.resize(n);
    out.fs.resize(n);
    long sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int d = std::abs(static_cast<int>(intensity) - static_cast<int>(samples[i]));
        out.db[i] = d;
        sum += d;
    }
    out.fs = out.db;
    std::sort(out.fs.begin(), out.fs.end());
    out.mp = n > 0 ? static_cast<double>(sum) / static_cast<double>(n) : 0.0;
}

DistanceVector pixel_distances(std::uint8_t intensity, std::span<const std::uint8_t> samples) {
    DistanceVector dv;
    pixel_distances_into(intensity, samples, dv);
    return dv;
}

double change_dynamics(const DistanceVector& dv) {
    const int n = static_cast<int>(dv.fs.size());
    const int half = n / 2;
    double lower = sorted_median(dv.fs.data(), half);
    double upper = sorted_median(dv.fs.data() + half, n - half);
    return dv.mp * (lower + upper) / (2.0 * kMaxIntensity * kMaxIntensity);
}

double adapt_threshold(double r0, double cd, double gamma, double xi) {
    return cd > xi ? r0 + gamma : r0;
}

double adapt_update_rate(double cd, double xi, double t_min, double t_max) {
    if (cd > xi) return std::clamp(2.0, t_min, t_max);
    if (cd == 0.0) return t_max;  // limit of 1/cd
    return std::clamp(1.0 / cd, t_min, t_max);
}

PixelClassification classify_pixel(const std::vector<int>& db, double r, int min_matches) {
    PixelClassification result;
    for (int d : db)
        if (d < r) ++result.matches;
    result.label = result.matches < min_matches ? 1 : 0;
    return result;
}

void DetectScratch::reset(int width, int height) {
    const std::size_t pixels = static_cast<std::size_t>(width) * height;
    if (cd.width() != width || cd.height() != height) cd = RealPlane(width, height);
    min_index.assign(pixels, 0);
    max_index.assign(pixels, 0);
    matches.assign(pixels, 0);
}

MaskFrame detect_frame(ModelState& state, const Frame& frame, const Params& params,
                       DetectScratch& scratch) {
    if (frame.width() != state.width || frame.height() != state.height)
        throw DataError("detect_frame: frame is " + std::to_string(frame.width()) + "x" +
                        std::to_string(frame.height()) + " but the model is " +
                        std::to_string(state.width) + "x" + std::to_string(state.height));
    scratch.reset(state.width, state.height);
    MaskFrame mask(state.width, state.height);

    DistanceVector dv;
    for (std::size_t p = 0; p < state.pixel_count(); ++p) {
        const std::uint8_t intensity = frame[p];
        pixel_distances_into(intensity, state.bm_at(p), dv);

        int min_i = 0, max_i = 0;
        for (int i = 1; i < state.n; ++i) {
            if (dv.db[i] < dv.db[min_i]) min_i = i;
            if (dv.db[i] > dv.db[max_i]) max_i = i;
        }
        scratch.min_index[p] = static_cast<std::uint16_t>(min_i);
        scratch.max_index[p] = static_cast<std::uint16_t>(max_i);

        const double cd = change_dynamics(dv);
        scratch.cd[p] = cd;
        const double r = adapt_threshold(state.planes.r0[p], cd, params.gamma, params.xi);
        state.r[p] = r;

        PixelClassification cls = classify_pixel(dv.db, r, params.min_matches);
        mask[p] = cls.label;
        scratch.matches[p] = cls.matches;

        state.t[p] = adapt_update_rate(cd, params.xi, params.t_min, params.t_max);
    }
    return mask;
}

}  // namespace candid
