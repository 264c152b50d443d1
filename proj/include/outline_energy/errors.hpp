#pragma once

#include <stdexcept>
#include <string>

namespace outline_energy {

/// Bad configuration: malformed config files, unknown keys, invalid priors.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem trouble: unreadable inputs, unwritable outputs.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: non-finite intermediates, no convergence.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid data content: malformed CSV rows, invariant violations.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace outline_energy
