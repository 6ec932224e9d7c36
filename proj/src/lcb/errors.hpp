#pragma once

#include <stdexcept>
#include <string>

namespace lcb {

// Invariant or precondition violation; message names the failed invariant.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values or failed numerical procedure.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or rejected configuration.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Unusable input data (empty, degenerate, outside support).
struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace lcb
