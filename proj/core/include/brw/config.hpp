#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "brw/runner.hpp"

namespace brw {

// Configuration problem with the offending key path, e.g. "medium.split_law.kind".
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& key_path, const std::string& message)
      : std::runtime_error(key_path + ": " + message), key(key_path) {}
  std::string key;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace brw
