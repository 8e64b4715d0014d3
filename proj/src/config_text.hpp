// config_text.hpp: small helpers for the flat key = value text format

#pragma once

#include <map>
#include <string>
#include <vector>

namespace symldf::detail {

struct KeyValueLine {
    std::string section; // empty before the first [header]
    std::string key;
    std::string value;
    int line{0};
};

// Parses "key = value" lines, '#' comments and optional "[section]" headers.
// Throws ConfigError with the line number on malformed lines or duplicates.
std::vector<KeyValueLine> parse_lines(const std::string& text);

// Flat variant: rejects section headers.
std::map<std::string, std::string> parse_flat_pairs(const std::string& text);

double parse_real(const std::string& value, const std::string& key, int line = 0);
long long parse_integer(const std::string& value, const std::string& key, int line = 0);
std::vector<double> parse_real_list(const std::string& value, const std::string& key,
                                    int line = 0);

std::size_t edit_distance(const std::string& a, const std::string& b);

// "unknown key 'bz' (did you mean 'b_z'?)"
std::string unknown_key_message(const std::string& key, const std::vector<std::string>& known);

} // namespace symldf::detail
