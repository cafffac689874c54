#include "kv_util.hpp"

#include <charconv>
#include <system_error>

#include "candid/plane.hpp"

namespace candid::detail {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_number(const KvEntry& entry, const std::string& origin, const char* kind) {
    T value{};
    const char* first = entry.value.data();
    const char* last = first + entry.value.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        fail(origin, entry.line, "bad " + std::string(kind) + " for key '" + entry.key + "': '" +
                                     entry.value + "'");
    return value;
}

}  // namespace

std::vector<KvEntry> parse_kv(std::istream& in, const std::string& origin) {
    std::vector<KvEntry> entries;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (std::size_t hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string text = trim(raw);
        if (text.empty()) continue;
        std::size_t eq = text.find('=');
        if (eq == std::string::npos) fail(origin, line, "expected 'key = value', got '" + text + "'");
        KvEntry entry;
        entry.key = trim(text.substr(0, eq));
        entry.value = trim(text.substr(eq + 1));
        entry.line = line;
        if (entry.key.empty()) fail(origin, line, "empty key");
        if (entry.value.empty()) fail(origin, line, "empty value for key '" + entry.key + "'");
        entries.push_back(std::move(entry));
    }
    return entries;
}

int parse_int(const KvEntry& entry, const std::string& origin) {
    return parse_number<int>(entry, origin, "integer");
}

double parse_double(const KvEntry& entry, const std::string& origin) {
    return parse_number<double>(entry, origin, "number");
}

std::uint64_t parse_u64(const KvEntry& entry, const std::string& origin) {
    return parse_number<std::uint64_t>(entry, origin, "unsigned integer");
}

std::vector<int> parse_int_list(const KvEntry& entry, const std::string& origin, int count) {
    std::vector<int> values;
    std::size_t pos = 0;
    const std::string& text = entry.value;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string piece = trim(text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                             : comma - pos));
        KvEntry scalar{entry.key, piece, entry.line};
        values.push_back(parse_number<int>(scalar, origin, "integer"));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (static_cast<int>(values.size()) != count)
        fail(origin, entry.line,
             "key '" + entry.key + "' needs " + std::to_string(count) + " comma-separated values, got " +
                 std::to_string(values.size()));
    return values;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace candid::detail
