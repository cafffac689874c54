#include "candid/updater.hpp"

#include <cstdlib>

namespace candid {

double recent_distance(std::span<const std::uint8_t> rhm, std::uint8_t intensity) {
    double sum = 0.0;
    for (std::uint8_t v : rhm) sum += v;
    return sum / static_cast<double>(rhm.size()) - static_cast<double>(intensity);
}

bool update_gate(SplitMix64& rng, double t) { return rng.next_double() < 1.0 / t; }

void deterministic_replace(std::span<std::uint8_t> samples, std::uint8_t intensity, double rdist,
                           int min_index, int max_index) {
    samples[static_cast<std::size_t>(rdist >= 0.0 ? min_index : max_index)] = intensity;
}

void update_recent_history(ModelState& state, std::size_t pixel, std::uint8_t intensity) {
    auto slot = state.rhm_cursor[pixel];
    state.rhm_at(pixel)[slot] = intensity;
    state.rhm_cursor[pixel] = static_cast<std::uint8_t>((slot + 1) % state.rhm_len);
}

void spatial_diffusion(ModelState& state, int x, int y, std::uint8_t intensity) {
    // Fixed enumeration order (row-major over the 3x3 block) is part of the
    // draw contract: the neighbor draw indexes into this ordering.
    std::size_t neighbors[8];
    int count = 0;
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            int nx = x + dx, ny = y + dy;
            if (nx < 0 || nx >= state.width || ny < 0 || ny >= state.height) continue;
            neighbors[count++] = static_cast<std::size_t>(ny) * state.width + nx;
        }
    }
    if (count == 0) return;  // single-pixel frame: no draw

    const std::size_t q = neighbors[state.rng.next_below(count)];
    auto samples = state.bm_at(q);
    int min_i = 0, max_i = 0;
    int min_d = 256, max_d = -1;
    for (int i = 0; i < state.n; ++i) {
        int d = std::abs(static_cast<int>(intensity) - static_cast<int>(samples[i]));
        if (d < min_d) {
            min_d = d;
            min_i = i;
        }
        if (d > max_d) {
            max_d = d;
            max_i = i;
        }
    }
    double rdist = recent_distance(state.rhm_at(q), intensity);
    deterministic_replace(samples, intensity, rdist, min_i, max_i);
}

void update_frame(ModelState& state, const Frame& frame, const MaskFrame& mask,
                  const DetectScratch& scratch) {
    if (frame.width() != state.width || frame.height() != state.height ||
        !frame.same_dims(mask))
        throw DataError("update_frame: frame/mask/model dimensions disagree");

    std::size_t p = 0;
    for (int y = 0; y < state.height; ++y) {
        for (int x = 0; x < state.width; ++x, ++p) {
            if (mask[p]) continue;  // foreground: model untouched, no draw
            const std::uint8_t intensity = frame[p];
            if (update_gate(state.rng, state.t[p])) {
                double rdist = recent_distance(state.rhm_at(p), intensity);
                deterministic_replace(state.bm_at(p), intensity, rdist, scratch.min_index[p],
                                      scratch.max_index[p]);
                spatial_diffusion(state, x, y, intensity);
            }
            update_recent_history(state, p, intensity);
        }
    }
    ++state.frame_index;
}

}  // namespace candid
