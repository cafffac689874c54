#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace candid {

// All tunable constants of the subtractor. Defaults are the tuned values the
// method ships with; desk-scale runs typically lower f_n and n.
struct Params {
    int f_n = 300;           // frames consumed by parameter initialization
    double alpha = 10.0;     // additive offset on the initial distance threshold
    double beta = 50.0;      // scale of the initial update rate
    int n = 30;              // background samples per pixel (must be even)
    double gamma = 10.0;     // threshold boost applied in dynamic regions
    double xi = 0.1;         // change-dynamics level that triggers adaptation
    int min_matches = 2;     // sample matches required to call a pixel background
    int median_window = 7;   // side length of the median prefilter (odd)
    double t_min = 2.0;      // update-rate bounds; the model updates with prob 1/T
    double t_max = 300.0;
    std::uint64_t seed = 1;  // update-RNG seed

    // Recent-history depth. Fixed by the method; not a config-file key.
    int rhm_len = 5;

    // Frames consumed before the first real detection frame.
    int warmup_frames() const { return f_n + n; }

    // Throws ConfigError on any invariant violation.
    void validate() const;

    // Resolved key=value echo, in config-file key order.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

// Plain-text config: one `key = value` per line, `#` starts a comment.
// Keys: f_n, alpha, beta, n, gamma, xi, min_matches, median_window,
// t_min, t_max, seed. Unknown keys are errors; missing keys keep defaults.
Params load_params(const std::filesystem::path& path);
Params parse_params(std::istream& in, const std::string& origin = "<config>");

}  // namespace candid
