#pragma once

#include "oqf/error.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <string>

namespace oqf::cli {

/// Binds each option of a subcommand both to a command-line flag and to a
/// config-file key of the same name (without the leading dashes). Values
/// from the config file override the flags; unknown keys are errors.
class Params {
public:
  Params(CLI::App* app, std::string command) : app_(app), command_(std::move(command)) {
    app_->add_option("--config", config_path_, "JSON file whose keys override the flags");
  }

  template <class T>
  CLI::Option* add(const std::string& name, T& var, const std::string& help) {
    setters_[name] = [&var, name](const nlohmann::json& j) {
      try {
        var = j.get<T>();
      } catch (const nlohmann::json::exception&) {
        throw InvalidArgument("config key '" + name + "' has the wrong type");
      }
    };
    return app_->add_option("--" + name, var, help)->capture_default_str();
  }

  CLI::Option* flag(const std::string& name, bool& var, const std::string& help) {
    setters_[name] = [&var, name](const nlohmann::json& j) {
      if (!j.is_boolean())
        throw InvalidArgument("config key '" + name + "' must be true or false");
      var = j.get<bool>();
    };
    return app_->add_flag("--" + name, var, help);
  }

  /// Reads the config file, if one was given, and applies it.
  void apply_config() const {
    if (config_path_.empty())
      return;
    std::ifstream in(config_path_);
    if (!in)
      throw InvalidArgument("cannot open config file '" + config_path_ + "'");
    nlohmann::json cfg;
    try {
      cfg = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidArgument("config file '" + config_path_ + "': " + e.what());
    }
    if (!cfg.is_object())
      throw InvalidArgument("config file must hold a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      if (key == "command") {
        if (value != command_)
          throw InvalidArgument("config file is for command '" + value.dump() + "', not '" + command_ + "'");
        continue;
      }
      const auto it = setters_.find(key);
      if (it == setters_.end())
        throw InvalidArgument("unknown config key '" + key + "' for command '" + command_ + "'");
      it->second(value);
    }
  }

private:
  CLI::App* app_;
  std::string command_;
  std::string config_path_;
  std::map<std::string, std::function<void(const nlohmann::json&)>> setters_;
};

} // namespace oqf::cli
