#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "candid/synth.hpp"
#include "helpers.hpp"
#include "reference.hpp"

using namespace candid;

namespace {

SceneSpec moving_box_scene() {
    SceneSpec spec;
    spec.width = 64;
    spec.height = 64;
    spec.length = 300;
    spec.background.value = 120;
    ObjectSpec obj;
    obj.intensity = 250;
    obj.width = 12;
    obj.height = 12;
    obj.vel_x = 1;
    obj.vel_y = 1;
    spec.objects.push_back(obj);
    return spec;
}

}  // namespace

TEST_CASE("constant scenes render the same frame forever") {
    SceneSpec spec;
    spec.width = 17;
    spec.height = 9;
    spec.length = 100;
    spec.background.value = 60;
    spec.validate();

    Frame frame;
    GroundTruthFrame gt;
    SynthStats stats;
    for (std::int64_t k = 0; k < 100; ++k) {
        render_frame(spec, k, frame, gt, stats);
        CHECK(frame == Frame(17, 9, 60));
        CHECK(gt == GroundTruthFrame(17, 9, 0));
    }
    CHECK(stats.frames == 100);
    CHECK(stats.pixels == 100 * 17 * 9);
    CHECK(stats.clamped == 0);
}

TEST_CASE("oscillation shows value for the first half of each cycle") {
    SceneSpec spec;
    spec.width = 4;
    spec.height = 4;
    spec.length = 10;
    spec.background.kind = BackgroundKind::oscillating;
    spec.background.value = 30;
    spec.background.value2 = 215;
    spec.background.period = 2;
    spec.validate();

    Frame frame;
    GroundTruthFrame gt;
    SynthStats stats;
    for (std::int64_t k = 0; k < 10; ++k) {
        render_frame(spec, k, frame, gt, stats);
        CHECK(frame == Frame(4, 4, k % 2 == 0 ? 30 : 215));
    }

    spec.background.period = 4;
    for (std::int64_t k = 0; k < 12; ++k) {
        render_frame(spec, k, frame, gt, stats);
        CHECK(frame == Frame(4, 4, k % 4 < 2 ? 30 : 215));
    }
}

TEST_CASE("the object paints exactly its rectangle, bounces included") {
    SceneSpec spec = moving_box_scene();
    spec.validate();

    Frame frame;
    GroundTruthFrame gt;
    SynthStats stats;
    for (std::int64_t k : {0, 1, 17, 51, 52, 53, 104, 105, 299}) {
        render_frame(spec, k, frame, gt, stats);
        auto [ox, oy] = spec.objects[0].position(k, 64, 64);
        CHECK(ox == test::bounce_oracle(0, 1, 52, static_cast<int>(k)));
        CHECK(oy == test::bounce_oracle(0, 1, 52, static_cast<int>(k)));

        int fg = 0;
        for (int y = 0; y < 64; ++y) {
            for (int x = 0; x < 64; ++x) {
                bool inside = x >= ox && x < ox + 12 && y >= oy && y < oy + 12;
                CHECK(gt.at(x, y) == (inside ? 255 : 0));
                CHECK(frame.at(x, y) == (inside ? 250 : 120));
                if (gt.at(x, y)) ++fg;
            }
        }
        CHECK(fg == 144);
    }
}

TEST_CASE("closed-form positions agree with step-by-step bouncing") {
    struct Case {
        int start, vel, range;
    };
    for (Case c : {Case{0, 1, 52}, Case{10, -3, 52}, Case{52, 7, 52}, Case{5, 2, 5},
                   Case{0, 9, 1}, Case{3, -11, 20}, Case{0, 0, 0}, Case{4, 5, 0}}) {
        ObjectSpec obj;
        obj.width = 1;
        obj.height = 1;
        obj.start_x = c.start;
        obj.start_y = 0;
        obj.vel_x = c.vel;
        obj.vel_y = 0;
        for (int k = 0; k <= 200; ++k) {
            int expected = test::bounce_oracle(c.start, c.vel, c.range, k);
            CHECK(obj.position(k, c.range + 1, 1).first == expected);
        }
    }
}

TEST_CASE("regions overlay the base background") {
    SceneSpec spec;
    spec.width = 10;
    spec.height = 8;
    spec.length = 4;
    spec.background.value = 40;
    RegionSpec region;
    region.x = 2;
    region.y = 1;
    region.width = 3;
    region.height = 4;
    region.background.kind = BackgroundKind::oscillating;
    region.background.value = 30;
    region.background.value2 = 215;
    spec.regions.push_back(region);
    spec.validate();

    Frame frame;
    GroundTruthFrame gt;
    SynthStats stats;
    render_frame(spec, 1, frame, gt, stats);  // odd frame: region shows value2
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 10; ++x) {
            bool inside = x >= 2 && x < 5 && y >= 1 && y < 5;
            CHECK(frame.at(x, y) == (inside ? 215 : 40));
        }
    CHECK(gt == GroundTruthFrame(10, 8, 0));
}

TEST_CASE("mild noise never clamps, absurd noise does") {
    SceneSpec spec;
    spec.width = 32;
    spec.height = 32;
    spec.length = 50;
    spec.background.kind = BackgroundKind::noise;
    spec.background.value = 120;
    spec.background.sigma = 2.0;
    spec.validate();

    Frame frame;
    GroundTruthFrame gt;
    SynthStats mild;
    double sum = 0.0, sq = 0.0;
    for (std::int64_t k = 0; k < 50; ++k) {
        render_frame(spec, k, frame, gt, mild);
        for (std::size_t p = 0; p < frame.size(); ++p) {
            sum += frame[p];
            sq += double(frame[p]) * frame[p];
        }
    }
    CHECK(mild.clamped == 0);
    CHECK(mild.clamp_rate() == 0.0);

    double count = 50.0 * 32 * 32;
    double mean = sum / count;
    double sd = std::sqrt(sq / count - mean * mean);
    CHECK(mean == doctest::Approx(120.0).epsilon(0.01));
    CHECK(sd == doctest::Approx(2.0).epsilon(0.15));

    spec.background.sigma = 400.0;
    SynthStats wild;
    for (std::int64_t k = 0; k < 5; ++k) render_frame(spec, k, frame, gt, wild);
    CHECK(wild.clamped > 0);
    CHECK(wild.clamp_rate() > 0.5);  // most draws land far outside [0, 255]
}

TEST_CASE("rendering is a pure function of spec and frame index") {
    SceneSpec spec;
    spec.width = 20;
    spec.height = 14;
    spec.length = 10;
    spec.seed = 42;
    spec.background.kind = BackgroundKind::noise;
    spec.background.sigma = 8.0;
    spec.validate();

    Frame a, b;
    GroundTruthFrame ga, gb;
    SynthStats stats;
    render_frame(spec, 7, a, ga, stats);
    render_frame(spec, 3, b, gb, stats);  // interleave another index
    render_frame(spec, 7, b, gb, stats);
    CHECK(a == b);
    CHECK(ga == gb);
}

TEST_CASE("ground truth ignores the seed") {
    SceneSpec spec = moving_box_scene();
    spec.background.kind = BackgroundKind::noise;
    spec.background.sigma = 10.0;
    spec.length = 6;
    spec.validate();

    Frame fa, fb;
    GroundTruthFrame ga, gb;
    SynthStats stats;
    spec.seed = 1;
    render_frame(spec, 5, fa, ga, stats);
    spec.seed = 2;
    render_frame(spec, 5, fb, gb, stats);
    CHECK(ga == gb);
    CHECK(fa != fb);
}

TEST_CASE("generation is byte-for-byte repeatable") {
    SceneSpec spec = moving_box_scene();
    spec.background.kind = BackgroundKind::noise;
    spec.background.sigma = 3.0;
    spec.length = 8;
    spec.validate();

    test::TempDir dir("regen");
    generate(spec, dir.path() / "a_in", dir.path() / "a_gt");
    SynthStats stats = generate(spec, dir.path() / "b_in", dir.path() / "b_gt");
    CHECK(stats.frames == 8);

    for (int k = 1; k <= 8; ++k) {
        char in_name[32], gt_name[32];
        std::snprintf(in_name, sizeof in_name, "in%06d.pgm", k);
        std::snprintf(gt_name, sizeof gt_name, "gt%06d.pgm", k);
        CHECK(test::read_bytes(dir.path() / "a_in" / in_name) ==
              test::read_bytes(dir.path() / "b_in" / in_name));
        CHECK(test::read_bytes(dir.path() / "a_gt" / gt_name) ==
              test::read_bytes(dir.path() / "b_gt" / gt_name));
    }
}

TEST_CASE("a full scene file parses into every field") {
    std::istringstream in(R"(# synthetic scene
scene.width = 40
scene.height = 30
scene.length = 12
scene.seed = 77
scene.min_contrast = 25.5

scene.background = noise
scene.background.value = 120
scene.background.sigma = 2.5

scene.region.1.rect = 2, 3, 10, 8
scene.region.1.background = oscillating
scene.region.1.value = 30
scene.region.1.value2 = 215
scene.region.1.period = 4

scene.region.2.rect = 20, 20, 5, 5
scene.region.2.value = 90

scene.object.1.intensity = 250
scene.object.1.size = 4, 3
scene.object.1.start = 5, 6
scene.object.1.velocity = 1, 2

scene.object.2.intensity = 10
scene.object.2.size = 2, 2
scene.object.2.start = 30, 4
)");
    SceneSpec spec = parse_scene_spec(in, "scene.cfg");
    CHECK(spec.width == 40);
    CHECK(spec.height == 30);
    CHECK(spec.length == 12);
    CHECK(spec.seed == 77);
    CHECK(spec.min_contrast == 25.5);
    CHECK(spec.background.kind == BackgroundKind::noise);
    CHECK(spec.background.value == 120);
    CHECK(spec.background.sigma == 2.5);

    REQUIRE(spec.regions.size() == 2);
    CHECK(spec.regions[0].x == 2);
    CHECK(spec.regions[0].y == 3);
    CHECK(spec.regions[0].width == 10);
    CHECK(spec.regions[0].height == 8);
    CHECK(spec.regions[0].background.kind == BackgroundKind::oscillating);
    CHECK(spec.regions[0].background.value == 30);
    CHECK(spec.regions[0].background.value2 == 215);
    CHECK(spec.regions[0].background.period == 4);
    CHECK(spec.regions[1].background.kind == BackgroundKind::constant);
    CHECK(spec.regions[1].background.value == 90);

    REQUIRE(spec.objects.size() == 2);
    CHECK(spec.objects[0].intensity == 250);
    CHECK(spec.objects[0].width == 4);
    CHECK(spec.objects[0].height == 3);
    CHECK(spec.objects[0].start_x == 5);
    CHECK(spec.objects[0].start_y == 6);
    CHECK(spec.objects[0].vel_x == 1);
    CHECK(spec.objects[0].vel_y == 2);
    CHECK(spec.objects[1].intensity == 10);
    CHECK(spec.objects[1].vel_x == 0);
}

TEST_CASE("scene files reject unknown keys with their location") {
    auto parse = [](const char* text) {
        std::istringstream in(text);
        return parse_scene_spec(in, "s.cfg");
    };

    CHECK_THROWS_AS(parse("scene.widht = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse("width = 4\n"), ConfigError);  // missing scene. prefix
    CHECK_THROWS_AS(parse("scene.object.1.speed = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse("scene.region.0.rect = 0,0,1,1\n"), ConfigError);

    try {
        parse("scene.width = 4\nscene.bg = 9\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string what = e.what();
        CHECK(what.find("s.cfg:2") != std::string::npos);
        CHECK(what.find("scene.bg") != std::string::npos);
    }
}

TEST_CASE("scene validation rejects inconsistent specs") {
    auto parse = [](const std::string& extra) {
        std::istringstream in("scene.width = 20\nscene.height = 20\nscene.length = 5\n" + extra);
        return parse_scene_spec(in, "s.cfg");
    };

    CHECK_THROWS_AS(parse("scene.background = wobbling\n"), ConfigError);
    CHECK_THROWS_AS(parse("scene.background.value = 256\n"), ConfigError);
    CHECK_THROWS_AS(parse("scene.background = oscillating\nscene.background.period = 3\n"),
                    ConfigError);
    // region index gap
    CHECK_THROWS_AS(parse("scene.region.1.rect = 0,0,2,2\nscene.region.3.rect = 4,4,2,2\n"),
                    ConfigError);
    // region past the right edge
    CHECK_THROWS_AS(parse("scene.region.1.rect = 15, 0, 6, 2\n"), ConfigError);
    // object starting outside
    CHECK_THROWS_AS(
        parse("scene.object.1.size = 4,4\nscene.object.1.start = 18, 0\n"), ConfigError);
    // object against default background 120: contrast 10 < default 20
    CHECK_THROWS_AS(parse("scene.object.1.intensity = 130\nscene.object.1.size = 2,2\n"),
                    ConfigError);
    // same object is fine once the contrast floor is lowered
    SceneSpec ok = parse(
        "scene.min_contrast = 5\nscene.object.1.intensity = 130\nscene.object.1.size = 2,2\n");
    CHECK(ok.objects.size() == 1);
    // contrast is also enforced against region backgrounds
    CHECK_THROWS_AS(parse("scene.region.1.rect = 0,0,2,2\nscene.region.1.value = 245\n"
                          "scene.object.1.intensity = 250\nscene.object.1.size = 2,2\n"),
                    ConfigError);
}
