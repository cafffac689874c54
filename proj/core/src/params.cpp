#include "candid/params.hpp"

#include <fstream>

#include "candid/plane.hpp"
#include "kv_util.hpp"

namespace candid {

void Params::validate() const {
    auto check = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError("invalid parameters: " + what);
    };
    check(f_n >= 2, "f_n must be at least 2 (gradient averaging needs a frame pair)");
    check(alpha >= 0.0, "alpha must be non-negative");
    check(beta > 0.0, "beta must be positive");
    check(n >= 2 && n % 2 == 0, "n must be a positive even sample count");
    check(gamma >= 0.0, "gamma must be non-negative");
    check(xi > 0.0 && xi < 1.0, "xi must lie strictly between 0 and 1");
    check(min_matches >= 1, "min_matches must be positive");
    check(min_matches <= n, "min_matches cannot exceed n");
    check(median_window >= 1 && median_window % 2 == 1, "median_window must be odd");
    check(t_min >= 1.0, "t_min must be at least 1 (1/t is a probability)");
    check(t_max >= t_min, "t_max must be at least t_min");
    check(rhm_len >= 1, "rhm_len must be positive");
    check(f_n + n >= rhm_len,
          "f_n + n must be at least " + std::to_string(rhm_len) + " to seed the recent history");
}

std::vector<std::pair<std::string, std::string>> Params::echo() const {
    using detail::format_double;
    return {
        {"f_n", std::to_string(f_n)},
        {"alpha", format_double(alpha)},
        {"beta", format_double(beta)},
        {"n", std::to_string(n)},
        {"gamma", format_double(gamma)},
        {"xi", format_double(xi)},
        {"min_matches", std::to_string(min_matches)},
        {"median_window", std::to_string(median_window)},
        {"t_min", format_double(t_min)},
        {"t_max", format_double(t_max)},
        {"seed", std::to_string(seed)},
    };
}

Params parse_params(std::istream& in, const std::string& origin) {
    Params params;
    for (const auto& entry : detail::parse_kv(in, origin)) {
        if (entry.key == "f_n")
            params.f_n = detail::parse_int(entry, origin);
        else if (entry.key == "alpha")
            params.alpha = detail::parse_double(entry, origin);
        else if (entry.key == "beta")
            params.beta = detail::parse_double(entry, origin);
        else if (entry.key == "n")
            params.n = detail::parse_int(entry, origin);
        else if (entry.key == "gamma")
            params.gamma = detail::parse_double(entry, origin);
        else if (entry.key == "xi")
            params.xi = detail::parse_double(entry, origin);
        else if (entry.key == "min_matches")
            params.min_matches = detail::parse_int(entry, origin);
        else if (entry.key == "median_window")
            params.median_window = detail::parse_int(entry, origin);
        else if (entry.key == "t_min")
            params.t_min = detail::parse_double(entry, origin);
        else if (entry.key == "t_max")
            params.t_max = detail::parse_double(entry, origin);
        else if (entry.key == "seed")
            params.seed = detail::parse_u64(entry, origin);
        else
            throw ConfigError(origin + ":" + std::to_string(entry.line) + ": unknown key '" +
                              entry.key + "'");
    }
    params.validate();
    return params;
}

Params load_params(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    return parse_params(in, path.string());
}

}  // namespace candid
