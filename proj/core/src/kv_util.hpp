#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace candid::detail {

struct KvEntry {
    std::string key;
    std::string value;
    int line = 0;
};

// `key = value` lines, `#` comments, blank lines skipped. Throws ConfigError
// on malformed lines; origin prefixes every message.
std::vector<KvEntry> parse_kv(std::istream& in, const std::string& origin);

// Strict scalar parsers: the whole value must be consumed.
int parse_int(const KvEntry& entry, const std::string& origin);
double parse_double(const KvEntry& entry, const std::string& origin);
std::uint64_t parse_u64(const KvEntry& entry, const std::string& origin);

// Comma-separated integers, exactly `count` of them.
std::vector<int> parse_int_list(const KvEntry& entry, const std::string& origin, int count);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace candid::detail
