#pragma once

#include <stdexcept>
#include <string>

namespace specsim {

// Validation failure in a config or data file, carrying the offending field.
struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(std::string field_name, const std::string& message)
      : std::runtime_error(field_name.empty() ? message : field_name + ": " + message),
        field(std::move(field_name)) {}
};

}  // namespace specsim
