#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "candid/params.hpp"
#include "candid/plane.hpp"
#include "candid/rng.hpp"

namespace candid {

// Per-pixel planes produced by parameter initialization.
struct ParamPlanes {
    RealPlane mtg;  // mean temporal gradient
    RealPlane r0;   // initial distance threshold
    RealPlane t0;   // initial update rate, clamped into [t_min, t_max]
};

// All mutable per-pixel algorithm state.
//
// Sample layouts are pixel-major: the n background samples of pixel p live at
// bm[p*n .. p*n+n-1], and its rhm_len recent-history samples at
// rhm[p*rhm_len ..]. rhm is a per-pixel ring buffer; rhm_cursor[p] points at
// the oldest entry (the next write position).
struct ModelState {
    int width = 0;
    int height = 0;
    int n = 0;
    int rhm_len = 0;

    std::vector<std::uint8_t> bm;
    std::vector<std::uint8_t> rhm;
    std::vector<std::uint8_t> rhm_cursor;

    ParamPlanes planes;
    RealPlane r;  // current threshold; always r0 or r0 + gamma
    RealPlane t;  // current update rate; always within [t_min, t_max]

    std::int64_t frame_index = 0;
    SplitMix64 rng;

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    std::span<std::uint8_t> bm_at(std::size_t pixel) {
        return {bm.data() + pixel * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
    }
    std::span<const std::uint8_t> bm_at(std::size_t pixel) const {
        return {bm.data() + pixel * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
    }
    std::span<std::uint8_t> rhm_at(std::size_t pixel) {
        return {rhm.data() + pixel * static_cast<std::size_t>(rhm_len),
                static_cast<std::size_t>(rhm_len)};
    }
    std::span<const std::uint8_t> rhm_at(std::size_t pixel) const {
        return {rhm.data() + pixel * static_cast<std::size_t>(rhm_len),
                static_cast<std::size_t>(rhm_len)};
    }

    friend bool operator==(const ModelState&, const ModelState&) = default;
};

// --- Parameter initialization -----------------------------------------------
//
// The mean temporal gradient is accumulated streamingly: feed each
// consecutive frame pair once, then divide by the pair count.

// acc(p) += |curr(p) - prev(p)| for every pixel. Throws on dimension mismatch.
void accumulate_mtg(const Frame& prev, const Frame& curr, RealPlane& acc);

// acc / (f_n - 1), elementwise. acc must cover exactly f_n frames; f_n >= 2.
RealPlane finalize_mtg(const RealPlane& acc, int f_n);

// r0 = mtg + alpha.
RealPlane init_threshold_plane(const RealPlane& mtg, double alpha);

// t0 = clamp(beta / (1 + mtg)^2, [t_min, t_max]).
RealPlane init_update_rate_plane(const RealPlane& mtg, double beta, double t_min, double t_max);

// --- Model construction ------------------------------------------------------

// Fresh state with r = r0, t = t0, zeroed samples, RNG seeded from params.
ModelState make_model_state(const Params& params, ParamPlanes planes);

// Background sample `sample_index` (0-based) of every pixel := frame, verbatim.
void set_background_sample(ModelState& state, int sample_index, const Frame& frame);

// All n samples at once; frames must hold exactly state.n frames in temporal order.
void fill_background_model(ModelState& state, std::span<const Frame> frames);

// Seed the recent history from the last rhm_len initialization frames, oldest
// first; the write cursor ends up on the oldest entry.
void init_recent_history(ModelState& state, std::span<const Frame> frames);

}  // namespace candid
