#pragma once

#include <stdexcept>
#include <string>

namespace evsim {

// Scenario or input validation failure. The message names the offending field
// and the violated constraint.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace evsim
