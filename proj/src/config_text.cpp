#include "config_text.hpp"

#include "symldf/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace symldf::detail {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string at_line(int line) {
    return line > 0 ? " (line " + std::to_string(line) + ")" : std::string{};
}

} // namespace

std::vector<KeyValueLine> parse_lines(const std::string& text) {
    std::vector<KeyValueLine> out;
    std::set<std::pair<std::string, std::string>> seen;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError("malformed section header '" + line + "'" + at_line(line_no),
                                  line_no);
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value', got '" + line + "'" + at_line(line_no),
                              line_no);
        }
        KeyValueLine kv{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no};
        if (kv.key.empty()) {
            throw ConfigError("empty key" + at_line(line_no), line_no);
        }
        if (!seen.insert({kv.section, kv.key}).second) {
            throw ConfigError("duplicate key '" + kv.key + "'" + at_line(line_no), line_no);
        }
        out.push_back(std::move(kv));
    }
    return out;
}

std::map<std::string, std::string> parse_flat_pairs(const std::string& text) {
    std::map<std::string, std::string> out;
    for (auto& kv : parse_lines(text)) {
        if (!kv.section.empty()) {
            throw ConfigError("unexpected section header in flat key-value text", kv.line);
        }
        out[kv.key] = kv.value;
    }
    return out;
}

double parse_real(const std::string& value, const std::string& key, int line) {
    double v = 0.0;
    const char* begin = value.data();
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ConfigError("key '" + key + "': '" + value + "' is not a finite real" +
                              at_line(line),
                          line);
    }
    return v;
}

long long parse_integer(const std::string& value, const std::string& key, int line) {
    long long v = 0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("key '" + key + "': '" + value + "' is not an integer" + at_line(line),
                          line);
    }
    return v;
}

std::vector<double> parse_real_list(const std::string& value, const std::string& key, int line) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        out.push_back(parse_real(trim(item), key, line));
    }
    if (out.empty()) {
        throw ConfigError("key '" + key + "': empty list" + at_line(line), line);
    }
    return out;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string unknown_key_message(const std::string& key, const std::vector<std::string>& known) {
    std::string msg = "unknown key '" + key + "'";
    std::string best;
    std::size_t best_d = std::string::npos;
    for (const auto& k : known) {
        const auto d = edit_distance(key, k);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    if (!best.empty() && best_d <= std::max<std::size_t>(2, key.size() / 2)) {
        msg += " (did you mean '" + best + "'?)";
    }
    return msg;
}

} // namespace symldf::detail
