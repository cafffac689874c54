#include "candid/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace candid {

namespace {

void require_same_dims(int fw, int fh, int pw, int ph, const char* what) {
    if (fw != pw || fh != ph)
        throw DataError(std::string(what) + ": dimension mismatch (" + std::to_string(fw) + "x" +
                        std::to_string(fh) + " vs " + std::to_string(pw) + "x" +
                        std::to_string(ph) + ")");
}

}  // namespace

void accumulate_mtg(const Frame& prev, const Frame& curr, RealPlane& acc) {
    require_same_dims(prev.width(), prev.height(), curr.width(), curr.height(), "accumulate_mtg");
    require_same_dims(curr.width(), curr.height(), acc.width(), acc.height(), "accumulate_mtg");
    for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i] += std::abs(static_cast<int>(curr[i]) - static_cast<int>(prev[i]));
}

RealPlane finalize_mtg(const RealPlane& acc, int f_n) {
    if (f_n < 2) throw ConfigError("mean temporal gradient needs at least 2 frames");
    RealPlane mtg(acc.width(), acc.height());
    const double scale = 1.0 / (f_n - 1);
    for (std::size_t i = 0; i < acc.size(); ++i) mtg[i] = acc[i] * scale;
    return mtg;
}

RealPlane init_threshold_plane(const RealPlane& mtg, double alpha) {
    RealPlane r0(mtg.width(), mtg.height());
    for (std::size_t i = 0; i < mtg.size(); ++i) r0[i] = mtg[i] + alpha;
    return r0;
}

RealPlane init_update_rate_plane(const RealPlane& mtg, double beta, double t_min, double t_max) {
    RealPlane t0(mtg.width(), mtg.height());
    for (std::size_t i = 0; i < mtg.size(); ++i) {
        double denom = 1.0 + mtg[i];
        t0[i] = std::clamp(beta / (denom * denom), t_min, t_max);
    }
    return t0;
}

ModelState make_model_state(const Params& params, ParamPlanes planes) {
    params.validate();
    require_same_dims(planes.mtg.width(), planes.mtg.height(), planes.r0.width(),
                      planes.r0.height(), "make_model_state");
    require_same_dims(planes.mtg.width(), planes.mtg.height(), planes.t0.width(),
                      planes.t0.height(), "make_model_state");
    ModelState state;
    state.width = planes.mtg.width();
    state.height = planes.mtg.height();
    state.n = params.n;
    state.rhm_len = params.rhm_len;
    state.bm.assign(state.pixel_count() * static_cast<std::size_t>(state.n), 0);
    state.rhm.assign(state.pixel_count() * static_cast<std::size_t>(state.rhm_len), 0);
    state.rhm_cursor.assign(state.pixel_count(), 0);
    state.r = planes.r0;
    state.t = planes.t0;
    state.planes = std::move(planes);
    state.rng = SplitMix64(params.seed);
    return state;
}

void set_background_sample(ModelState& state, int sample_index, const Frame& frame) {
    require_same_dims(frame.width(), frame.height(), state.width, state.height,
                      "set_background_sample");
    if (sample_index < 0 || sample_index >= state.n)
        throw DataError("background sample index " + std::to_string(sample_index) +
                        " out of range [0, " + std::to_string(state.n) + ")");
    const std::size_t n = static_cast<std::size_t>(state.n);
    for (std::size_t p = 0; p < state.pixel_count(); ++p)
        state.bm[p * n + static_cast<std::size_t>(sample_index)] = frame[p];
}

void fill_background_model(ModelState& state, std::span<const Frame> frames) {
    if (static_cast<int>(frames.size()) != state.n)
        throw DataError("background fill needs exactly " + std::to_string(state.n) +
                        " frames, got " + std::to_string(frames.size()));
    for (int i = 0; i < state.n; ++i) set_background_sample(state, i, frames[i]);
}

void init_recent_history(ModelState& state, std::span<const Frame> frames) {
    if (static_cast<int>(frames.size()) != state.rhm_len)
        throw DataError("recent history needs exactly " + std::to_string(state.rhm_len) +
                        " frames, got " + std::to_string(frames.size()));
    const std::size_t len = static_cast<std::size_t>(state.rhm_len);
    for (std::size_t j = 0; j < len; ++j) {
        const Frame& frame = frames[j];
        require_same_dims(frame.width(), frame.height(), state.width, state.height,
                          "init_recent_history");
        for (std::size_t p = 0; p < state.pixel_count(); ++p) state.rhm[p * len + j] = frame[p];
    }
    std::fill(state.rhm_cursor.begin(), state.rhm_cursor.end(), 0);  // oldest at slot 0
}

}  // namespace candid
