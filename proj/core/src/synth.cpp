#include "candid/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "candid/frame_io.hpp"
#include "candid/rng.hpp"
#include "kv_util.hpp"

namespace candid {

namespace {

// Gaussian stream via Box-Muller, one fresh generator per frame so frames can
// be rendered independently and in any order.
class NoiseStream {
  public:
    explicit NoiseStream(std::uint64_t seed) : rng_(seed) {}

    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - rng_.next_double();  // (0, 1]: keeps log finite
        double u2 = rng_.next_double();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::acos(-1.0) * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

std::uint8_t sample_background(const BackgroundSpec& bg, std::int64_t frame_index,
                               NoiseStream& noise, SynthStats& stats) {
    switch (bg.kind) {
        case BackgroundKind::constant:
            return static_cast<std::uint8_t>(bg.value);
        case BackgroundKind::oscillating: {
            // 0-based frame index; the first half of each cycle shows value.
            std::int64_t phase = frame_index % bg.period;
            return static_cast<std::uint8_t>(phase < bg.period / 2 ? bg.value : bg.value2);
        }
        case BackgroundKind::noise: {
            double v = bg.value + bg.sigma * noise.next_gaussian();
            long rounded = std::lround(v);
            if (rounded < 0 || rounded > kMaxIntensity) {
                ++stats.clamped;
                rounded = std::clamp(rounded, 0L, static_cast<long>(kMaxIntensity));
            }
            return static_cast<std::uint8_t>(rounded);
        }
    }
    return 0;
}

void check(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid scene: " + what);
}

void validate_background(const BackgroundSpec& bg, const std::string& where) {
    check(bg.value >= 0 && bg.value <= kMaxIntensity, where + " value out of [0, 255]");
    switch (bg.kind) {
        case BackgroundKind::constant:
            break;
        case BackgroundKind::noise:
            check(bg.sigma >= 0.0, where + " sigma must be non-negative");
            break;
        case BackgroundKind::oscillating:
            check(bg.value2 >= 0 && bg.value2 <= kMaxIntensity,
                  where + " value2 out of [0, 255]");
            check(bg.period >= 2 && bg.period % 2 == 0,
                  where + " period must be even and at least 2");
            break;
    }
}

// Reflective bounce on [0, range] with period 2*range.
int reflect(std::int64_t pos, int range) {
    if (range <= 0) return 0;
    const std::int64_t period = 2LL * range;
    std::int64_t m = pos % period;
    if (m < 0) m += period;
    return static_cast<int>(m <= range ? m : period - m);
}

BackgroundKind parse_background_kind(const detail::KvEntry& entry, const std::string& origin) {
    if (entry.value == "constant") return BackgroundKind::constant;
    if (entry.value == "noise") return BackgroundKind::noise;
    if (entry.value == "oscillating") return BackgroundKind::oscillating;
    throw ConfigError(origin + ":" + std::to_string(entry.line) + ": background kind '" +
                      entry.value + "' is not constant, noise or oscillating");
}

// Routes one `field = value` onto a BackgroundSpec; returns false when the
// field is not a background key.
bool apply_background_key(BackgroundSpec& bg, const std::string& field,
                          const detail::KvEntry& entry, const std::string& origin) {
    if (field == "background")
        bg.kind = parse_background_kind(entry, origin);
    else if (field == "value")
        bg.value = detail::parse_int(entry, origin);
    else if (field == "sigma")
        bg.sigma = detail::parse_double(entry, origin);
    else if (field == "value2")
        bg.value2 = detail::parse_int(entry, origin);
    else if (field == "period")
        bg.period = detail::parse_int(entry, origin);
    else
        return false;
    return true;
}

}  // namespace

double BackgroundSpec::mean() const {
    switch (kind) {
        case BackgroundKind::constant:
        case BackgroundKind::noise:
            return value;
        case BackgroundKind::oscillating:
            return (value + value2) / 2.0;
    }
    return value;
}

std::pair<int, int> ObjectSpec::position(std::int64_t frame_index, int frame_width,
                                         int frame_height) const {
    return {reflect(start_x + vel_x * frame_index, frame_width - width),
            reflect(start_y + vel_y * frame_index, frame_height - height)};
}

void SceneSpec::validate() const {
    check(width >= 1 && height >= 1, "dimensions must be positive");
    check(length >= 1, "length must be positive");
    check(min_contrast >= 0.0, "min_contrast must be non-negative");
    validate_background(background, "background");
    for (std::size_t i = 0; i < regions.size(); ++i) {
        const RegionSpec& region = regions[i];
        const std::string where = "region " + std::to_string(i + 1);
        check(region.width >= 1 && region.height >= 1, where + " must be non-empty");
        check(region.x >= 0 && region.y >= 0 && region.x + region.width <= width &&
                  region.y + region.height <= height,
              where + " exceeds the frame bounds");
        validate_background(region.background, where);
    }
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const ObjectSpec& object = objects[i];
        const std::string where = "object " + std::to_string(i + 1);
        check(object.intensity >= 0 && object.intensity <= kMaxIntensity,
              where + " intensity out of [0, 255]");
        check(object.width >= 1 && object.height >= 1, where + " must be non-empty");
        check(object.width <= width && object.height <= height,
              where + " is larger than the frame");
        check(object.start_x >= 0 && object.start_x <= width - object.width &&
                  object.start_y >= 0 && object.start_y <= height - object.height,
              where + " starts out of bounds");
        check(std::abs(object.intensity - background.mean()) >= min_contrast,
              where + " contrast against the background is below min_contrast");
        for (std::size_t j = 0; j < regions.size(); ++j)
            check(std::abs(object.intensity - regions[j].background.mean()) >= min_contrast,
                  where + " contrast against region " + std::to_string(j + 1) +
                      " is below min_contrast");
    }
}

SceneSpec parse_scene_spec(std::istream& in, const std::string& origin) {
    SceneSpec spec;
    // region.<k>.* and object.<k>.* keys may arrive in any order; collect by
    // index first, then require the indices to be 1..m with no gaps.
    std::map<int, RegionSpec> regions;
    std::map<int, ObjectSpec> objects;

    auto bad_key = [&origin](const detail::KvEntry& entry) -> ConfigError {
        return ConfigError(origin + ":" + std::to_string(entry.line) + ": unknown key '" +
                           entry.key + "'");
    };
    auto indexed = [&origin](const detail::KvEntry& entry, const std::string& head,
                             std::string& field) {
        // "<head>.<k>.<field>" -> index k
        std::size_t dot = entry.key.find('.', head.size() + 7);  // past "scene.<head>."
        if (dot == std::string::npos) return -1;
        detail::KvEntry index_entry{entry.key, entry.key.substr(head.size() + 7, dot - head.size() - 7),
                                    entry.line};
        int index = detail::parse_int(index_entry, origin);
        field = entry.key.substr(dot + 1);
        return index;
    };

    for (const auto& entry : detail::parse_kv(in, origin)) {
        if (entry.key.rfind("scene.", 0) != 0) throw bad_key(entry);
        const std::string key = entry.key.substr(6);

        if (key == "width")
            spec.width = detail::parse_int(entry, origin);
        else if (key == "height")
            spec.height = detail::parse_int(entry, origin);
        else if (key == "length")
            spec.length = detail::parse_int(entry, origin);
        else if (key == "seed")
            spec.seed = detail::parse_u64(entry, origin);
        else if (key == "min_contrast")
            spec.min_contrast = detail::parse_double(entry, origin);
        else if (key == "background" || key.rfind("background.", 0) == 0) {
            std::string field = key == "background" ? "background" : key.substr(11);
            if (!apply_background_key(spec.background, field, entry, origin)) throw bad_key(entry);
        } else if (key.rfind("region.", 0) == 0) {
            std::string field;
            int index = indexed(entry, "region", field);
            if (index < 1) throw bad_key(entry);
            RegionSpec& region = regions[index];
            if (field == "rect") {
                auto rect = detail::parse_int_list(entry, origin, 4);
                region.x = rect[0];
                region.y = rect[1];
                region.width = rect[2];
                region.height = rect[3];
            } else if (!apply_background_key(region.background, field, entry, origin)) {
                throw bad_key(entry);
            }
        } else if (key.rfind("object.", 0) == 0) {
            std::string field;
            int index = indexed(entry, "object", field);
            if (index < 1) throw bad_key(entry);
            ObjectSpec& object = objects[index];
            if (field == "intensity") {
                object.intensity = detail::parse_int(entry, origin);
            } else if (field == "size") {
                auto size = detail::parse_int_list(entry, origin, 2);
                object.width = size[0];
                object.height = size[1];
            } else if (field == "start") {
                auto start = detail::parse_int_list(entry, origin, 2);
                object.start_x = start[0];
                object.start_y = start[1];
            } else if (field == "velocity") {
                auto velocity = detail::parse_int_list(entry, origin, 2);
                object.vel_x = velocity[0];
                object.vel_y = velocity[1];
            } else {
                throw bad_key(entry);
            }
        } else {
            throw bad_key(entry);
        }
    }

    auto flatten = [&origin](auto& by_index, auto& out, const char* what) {
        int expected = 1;
        for (auto& [index, value] : by_index) {
            if (index != expected)
                throw ConfigError(origin + ": " + what + " indices must be 1.." +
                                  std::to_string(by_index.size()) + " with no gaps");
            out.push_back(std::move(value));
            ++expected;
        }
    };
    flatten(regions, spec.regions, "region");
    flatten(objects, spec.objects, "object");

    spec.validate();
    return spec;
}

SceneSpec load_scene_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scene file: " + path.string());
    return parse_scene_spec(in, path.string());
}

void render_frame(const SceneSpec& spec, std::int64_t index, Frame& frame, GroundTruthFrame& gt,
                  SynthStats& stats) {
    if (frame.width() != spec.width || frame.height() != spec.height)
        frame = Frame(spec.width, spec.height);
    if (gt.width() != spec.width || gt.height() != spec.height)
        gt = GroundTruthFrame(spec.width, spec.height);
    std::fill(gt.data(), gt.data() + gt.size(), 0);

    NoiseStream noise(SplitMix64::derive(spec.seed, static_cast<std::uint64_t>(index)));
    for (std::size_t p = 0; p < frame.size(); ++p)
        frame[p] = sample_background(spec.background, index, noise, stats);
    for (const RegionSpec& region : spec.regions) {
        for (int y = region.y; y < region.y + region.height; ++y)
            for (int x = region.x; x < region.x + region.width; ++x)
                frame.at(x, y) = sample_background(region.background, index, noise, stats);
    }
    for (const ObjectSpec& object : spec.objects) {
        auto [ox, oy] = object.position(index, spec.width, spec.height);
        for (int y = oy; y < oy + object.height; ++y) {
            for (int x = ox; x < ox + object.width; ++x) {
                frame.at(x, y) = static_cast<std::uint8_t>(object.intensity);
                gt.at(x, y) = kMaxIntensity;
            }
        }
    }
    ++stats.frames;
    stats.pixels += static_cast<std::int64_t>(frame.size());
}

SynthStats generate(const SceneSpec& spec, const std::filesystem::path& frames_dir,
                    const std::filesystem::path& gt_dir) {
    spec.validate();
    std::filesystem::create_directories(frames_dir);
    std::filesystem::create_directories(gt_dir);

    SynthStats stats;
    Frame frame;
    GroundTruthFrame gt;
    char name[32];
    for (std::int64_t k = 0; k < spec.length; ++k) {
        render_frame(spec, k, frame, gt, stats);
        std::snprintf(name, sizeof(name), "in%06lld.pgm", static_cast<long long>(k + 1));
        write_frame(frame, frames_dir / name);
        std::snprintf(name, sizeof(name), "gt%06lld.pgm", static_cast<long long>(k + 1));
        write_frame(gt, gt_dir / name);
    }
    return stats;
}

}  // namespace candid
