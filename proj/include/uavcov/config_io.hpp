#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavcov/model.hpp"

namespace uavcov {

inline constexpr int kSchemaVersion = 1;

/// Flat, namespaced key/value document:
///
///     # comment
///     schema_version = 1
///     uav.p_t_dbm = 21
///
/// Keys are unique; values are raw strings until a config is built.
class ConfigDocument {
public:
    static ConfigDocument parse(std::string_view text, std::filesystem::path base_dir = {});
    static ConfigDocument from_file(const std::filesystem::path& path);

    bool contains(const std::string& key) const { return entries_.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;
    void set(const std::string& key, std::string value) { entries_[key] = std::move(value); }
    void erase(const std::string& key) { entries_.erase(key); }

    const std::map<std::string, std::string>& entries() const { return entries_; }
    /// Directory used to resolve relative paths (rectenna.csv).
    const std::filesystem::path& base_dir() const { return base_dir_; }

private:
    std::map<std::string, std::string> entries_;
    std::filesystem::path base_dir_;
};

/// Every key the schema accepts.
const std::vector<std::string>& schema_keys();
bool is_schema_key(std::string_view key);

/// Builds and validates a scenario. Units follow the parameter table
/// (dBm, dBi, MHz, Wh, per km^2) and are converted to SI here. Throws
/// ConfigError naming the offending key or violated invariant.
ScenarioConfig load_config(const ConfigDocument& doc);
ScenarioConfig load_config(std::string_view text, std::filesystem::path base_dir = {});
ScenarioConfig load_config_file(const std::filesystem::path& path);

/// Parses a number, accepting "inf"; throws ConfigError naming the key.
double parse_number(std::string_view key, std::string_view text);

}  // namespace uavcov
