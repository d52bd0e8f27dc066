// Copyright 2026 The typlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "typlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace typlab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

bool valid_key(std::string_view key) {
    return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    });
}

[[noreturn]] void bad_value(const std::string &key, const std::string &value, const char *type) {
    throw ConfigError("config key '" + key + "': '" + value + "' is not a valid " + type);
}

} // namespace

Config Config::parse(std::string_view text) {
    Config cfg;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!valid_key(key)) {
            throw ConfigError("config line " + std::to_string(line_no) + ": invalid key '" + key + "'");
        }
        if (cfg.contains(key)) {
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
        cfg.entries_[key] = value;
    }
    return cfg;
}

Config Config::load(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void Config::set(const std::string &key, std::string value) {
    if (!valid_key(key)) {
        throw ConfigError("invalid config key '" + key + "'");
    }
    entries_[key] = std::move(value);
}

std::optional<std::string> Config::get(const std::string &key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string Config::get_string(const std::string &key, std::string fallback) const {
    auto v = get(key);
    return v ? *v : std::move(fallback);
}

long long Config::get_int(const std::string &key, long long fallback) const {
    const auto v = get(key);
    if (!v) {
        return fallback;
    }
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || ptr != v->data() + v->size()) {
        bad_value(key, *v, "integer");
    }
    return out;
}

std::uint64_t Config::get_uint(const std::string &key, std::uint64_t fallback) const {
    const auto v = get(key);
    if (!v) {
        return fallback;
    }
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || ptr != v->data() + v->size()) {
        bad_value(key, *v, "unsigned integer");
    }
    return out;
}

double Config::get_double(const std::string &key, double fallback) const {
    const auto v = get(key);
    if (!v) {
        return fallback;
    }
    // strtod rather than from_chars<double>: libstdc++ 11 lacks the latter.
    char *end = nullptr;
    const double out = std::strtod(v->c_str(), &end);
    if (v->empty() || end != v->c_str() + v->size()) {
        bad_value(key, *v, "number");
    }
    return out;
}

bool Config::get_bool(const std::string &key, bool fallback) const {
    const auto v = get(key);
    if (!v) {
        return fallback;
    }
    if (*v == "true" || *v == "1" || *v == "yes") {
        return true;
    }
    if (*v == "false" || *v == "0" || *v == "no") {
        return false;
    }
    bad_value(key, *v, "boolean");
}

std::vector<std::string> Config::get_list(const std::string &key) const {
    const auto v = get(key);
    return v ? split_list(*v) : std::vector<std::string>{};
}

Config Config::scoped(std::string_view prefix) const {
    Config out;
    const std::string dotted = std::string(prefix) + ".";
    for (const auto &[k, v] : entries_) {
        if (k.find('.') == std::string::npos) {
            out.entries_[k] = v;
        }
    }
    for (const auto &[k, v] : entries_) {
        if (k.size() > dotted.size() && k.compare(0, dotted.size(), dotted) == 0) {
            out.entries_[k.substr(dotted.size())] = v;
        }
    }
    return out;
}

std::string Config::canonical_text() const {
    std::string out;
    for (const auto &[k, v] : entries_) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> out;
    while (true) {
        const std::size_t comma = value.find(',');
        const std::string_view item = trim(value.substr(0, comma));
        if (!item.empty()) {
            out.emplace_back(item);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        value.remove_prefix(comma + 1);
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

} // namespace typlab
