#include "doctest.h"

#include <algorithm>
#include <vector>

#include "candid/model.hpp"
#include "helpers.hpp"

using namespace candid;

namespace {

Params small_params() {
    Params p;
    p.f_n = 5;
    p.n = 4;
    return p;
}

ParamPlanes planes_for(int width, int height, double mtg_value, const Params& p) {
    ParamPlanes planes;
    planes.mtg = RealPlane(width, height, mtg_value);
    planes.r0 = init_threshold_plane(planes.mtg, p.alpha);
    planes.t0 = init_update_rate_plane(planes.mtg, p.beta, p.t_min, p.t_max);
    return planes;
}

}  // namespace

TEST_CASE("gradient accumulation sums absolute differences") {
    RealPlane acc(1, 1);
    accumulate_mtg(test::make_frame(1, 1, {10}), test::make_frame(1, 1, {20}), acc);
    CHECK(acc[0] == 10.0);

    Frame same = test::make_frame(1, 1, {33});
    accumulate_mtg(same, same, acc);
    CHECK(acc[0] == 10.0);

    // series 10, 20, 15: |20-10| + |15-20| = 15
    RealPlane series(1, 1);
    accumulate_mtg(test::make_frame(1, 1, {10}), test::make_frame(1, 1, {20}), series);
    accumulate_mtg(test::make_frame(1, 1, {20}), test::make_frame(1, 1, {15}), series);
    CHECK(series[0] == 15.0);
    CHECK(finalize_mtg(series, 3)[0] == doctest::Approx(7.5).epsilon(1e-9));
}

TEST_CASE("gradient accumulation checks dimensions") {
    RealPlane acc(2, 2);
    CHECK_THROWS_AS(accumulate_mtg(Frame(2, 2), Frame(3, 2), acc), DataError);
    CHECK_THROWS_AS(accumulate_mtg(Frame(3, 2), Frame(3, 2), acc), DataError);
}

TEST_CASE("finalize divides by the pair count") {
    RealPlane zero(2, 2, 0.0);
    RealPlane mtg = finalize_mtg(zero, 10);
    CHECK(mtg[0] == 0.0);

    RealPlane constant(3, 1, 12.0);
    for (int f_n : {2, 3, 7}) {
        RealPlane scaled = finalize_mtg(constant, f_n);
        for (std::size_t i = 0; i < scaled.size(); ++i)
            CHECK(scaled[i] == doctest::Approx(12.0 / (f_n - 1)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(finalize_mtg(constant, 1), ConfigError);
}

TEST_CASE("gradient is invariant under init-segment reversal") {
    SplitMix64 rng(17);
    std::vector<Frame> frames;
    for (int i = 0; i < 8; ++i) frames.push_back(test::random_frame(6, 5, rng));

    RealPlane forward(6, 5), backward(6, 5);
    for (std::size_t i = 1; i < frames.size(); ++i)
        accumulate_mtg(frames[i - 1], frames[i], forward);
    for (std::size_t i = frames.size() - 1; i > 0; --i)
        accumulate_mtg(frames[i], frames[i - 1], backward);
    CHECK(forward == backward);
}

TEST_CASE("threshold plane offsets the gradient") {
    RealPlane mtg(3, 1);
    mtg[0] = 0.0;
    mtg[1] = 7.5;
    mtg[2] = 15.0;
    RealPlane r0 = init_threshold_plane(mtg, 10.0);
    CHECK(r0[0] == 10.0);
    CHECK(r0[1] == 17.5);
    CHECK(r0[2] == 25.0);
    for (std::size_t i = 0; i < r0.size(); ++i) CHECK(r0[i] - mtg[i] == 10.0);
}

TEST_CASE("update-rate plane applies the inverse-square law with clamping") {
    RealPlane mtg(3, 1);
    mtg[0] = 0.0;   // 50/1 = 50
    mtg[1] = 1.0;   // 50/4 = 12.5
    mtg[2] = 9.0;   // 50/100 = 0.5 -> clamp to 2
    RealPlane t0 = init_update_rate_plane(mtg, 50.0, 2.0, 300.0);
    CHECK(t0[0] == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(t0[1] == doctest::Approx(12.5).epsilon(1e-12));
    CHECK(t0[2] == 2.0);
}

TEST_CASE("update-rate plane stays within bounds for arbitrary gradients") {
    SplitMix64 rng(23);
    RealPlane mtg(16, 16);
    for (std::size_t i = 0; i < mtg.size(); ++i) mtg[i] = rng.next_double() * 255.0;
    RealPlane t0 = init_update_rate_plane(mtg, 50.0, 2.0, 300.0);
    for (std::size_t i = 0; i < t0.size(); ++i) {
        CHECK(t0[i] >= 2.0);
        CHECK(t0[i] <= 300.0);
    }
}

TEST_CASE("model state starts from the planes") {
    Params p = small_params();
    ModelState state = make_model_state(p, planes_for(4, 3, 1.0, p));
    CHECK(state.width == 4);
    CHECK(state.height == 3);
    CHECK(state.n == 4);
    CHECK(state.rhm_len == 5);
    CHECK(state.bm.size() == 4u * 3u * 4u);
    CHECK(state.rhm.size() == 4u * 3u * 5u);
    CHECK(state.r == state.planes.r0);
    CHECK(state.t == state.planes.t0);
    CHECK(state.frame_index == 0);
}

TEST_CASE("background fill copies frames verbatim") {
    Params p = small_params();
    p.n = 2;
    ModelState state = make_model_state(p, planes_for(1, 1, 0.0, p));
    std::vector<Frame> frames = {test::make_frame(1, 1, {100}), test::make_frame(1, 1, {120})};
    fill_background_model(state, frames);
    CHECK(state.bm_at(0)[0] == 100);
    CHECK(state.bm_at(0)[1] == 120);
}

TEST_CASE("background fill is plane-by-plane faithful for many random frames") {
    Params p;
    p.f_n = 5;
    p.n = 30;
    ModelState state = make_model_state(p, planes_for(8, 8, 0.0, p));
    SplitMix64 rng(77);
    std::vector<Frame> frames;
    for (int i = 0; i < 30; ++i) frames.push_back(test::random_frame(8, 8, rng));
    fill_background_model(state, frames);
    for (int i = 0; i < 30; ++i)
        for (std::size_t pix = 0; pix < state.pixel_count(); ++pix)
            CHECK(state.bm_at(pix)[static_cast<std::size_t>(i)] == frames[i][pix]);
}

TEST_CASE("background fill rejects wrong counts and dims") {
    Params p = small_params();
    ModelState state = make_model_state(p, planes_for(2, 2, 0.0, p));
    std::vector<Frame> three(3, Frame(2, 2));
    CHECK_THROWS_AS(fill_background_model(state, three), DataError);
    CHECK_THROWS_AS(set_background_sample(state, 4, Frame(2, 2)), DataError);
    CHECK_THROWS_AS(set_background_sample(state, 0, Frame(3, 2)), DataError);
}

TEST_CASE("recent history seeds in temporal order with the cursor on the oldest") {
    Params p = small_params();
    ModelState state = make_model_state(p, planes_for(1, 1, 0.0, p));
    std::vector<Frame> frames;
    for (int v : {10, 20, 30, 40, 50}) frames.push_back(test::make_frame(1, 1, {v}));
    init_recent_history(state, frames);

    auto rhm = state.rhm_at(0);
    CHECK(rhm[0] == 10);
    CHECK(rhm[4] == 50);
    CHECK(state.rhm_cursor[0] == 0);  // next write evicts the oldest (10)

    double mean = 0;
    for (std::uint8_t v : rhm) mean += v;
    CHECK(mean / 5 == 30.0);

    std::vector<Frame> wrong(4, Frame(1, 1));
    CHECK_THROWS_AS(init_recent_history(state, wrong), DataError);
}

TEST_CASE("constant history seeds constant") {
    Params p = small_params();
    ModelState state = make_model_state(p, planes_for(2, 1, 0.0, p));
    std::vector<Frame> frames(5, Frame(2, 1, 42));
    init_recent_history(state, frames);
    for (std::uint8_t v : state.rhm_at(1)) CHECK(v == 42);
}
