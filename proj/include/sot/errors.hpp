#pragma once

#include <stdexcept>
#include <string>

namespace sot {

// Error taxonomy maps onto CLI exit codes: ConfigError -> 2, IoError -> 3,
// SimulationDiverged -> 4, anything else -> 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SimulationDiverged : std::runtime_error {
    SimulationDiverged(const std::string& msg, long step) : std::runtime_error(msg), step_index(step) {}
    long step_index;
};

struct CalibrationError : std::runtime_error {
    explicit CalibrationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TrainingError : std::runtime_error {
    explicit TrainingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sot
