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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace typlab {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Flat key/value configuration.
///
/// Grammar, one entry per line:
///   key = value        # trailing comments allowed
///   ID.key = value     # override scoped to experiment ID
/// Keys are [A-Za-z0-9_.]+; values are trimmed; arrays are comma lists.
/// A repeated key is an error.
class Config {
  public:
    static Config parse(std::string_view text);
    static Config load(const std::filesystem::path &path);

    void set(const std::string &key, std::string value);
    void erase(const std::string &key) { entries_.erase(key); }
    [[nodiscard]] bool contains(const std::string &key) const { return entries_.count(key) > 0; }
    [[nodiscard]] std::optional<std::string> get(const std::string &key) const;

    [[nodiscard]] std::string get_string(const std::string &key, std::string fallback) const;
    [[nodiscard]] long long get_int(const std::string &key, long long fallback) const;
    [[nodiscard]] std::uint64_t get_uint(const std::string &key, std::uint64_t fallback) const;
    [[nodiscard]] double get_double(const std::string &key, double fallback) const;
    [[nodiscard]] bool get_bool(const std::string &key, bool fallback) const;
    [[nodiscard]] std::vector<std::string> get_list(const std::string &key) const;

    /// Unscoped keys overlaid with `prefix.`-scoped keys (prefix stripped).
    [[nodiscard]] Config scoped(std::string_view prefix) const;

    [[nodiscard]] const std::map<std::string, std::string> &entries() const { return entries_; }
    /// Sorted `key = value` lines; hashed into `spec_hash`.
    [[nodiscard]] std::string canonical_text() const;

  private:
    std::map<std::string, std::string> entries_;
};

[[nodiscard]] std::vector<std::string> split_list(std::string_view value);

/// 64-bit FNV-1a, rendered as 16 hex digits by hex64.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view data);
[[nodiscard]] std::string hex64(std::uint64_t value);

} // namespace typlab
