#pragma once

#include <stdexcept>
#include <string>

namespace csim {

// Base for all simulator errors so callers can catch the family at once.
struct SimError : std::runtime_error {
    explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : SimError {
    explicit ConfigError(const std::string& msg) : SimError("config: " + msg) {}
};

struct CollisionStateError : SimError {
    explicit CollisionStateError(const std::string& msg) : SimError("collision state: " + msg) {}
};

struct InvalidDuration : SimError {
    explicit InvalidDuration(const std::string& msg) : SimError("invalid duration: " + msg) {}
};

struct PlacementError : SimError {
    explicit PlacementError(const std::string& msg) : SimError("placement: " + msg) {}
};

struct NoForecastError : SimError {
    explicit NoForecastError(const std::string& msg) : SimError("no forecast: " + msg) {}
};

struct LocalizationDegraded : SimError {
    explicit LocalizationDegraded(const std::string& msg) : SimError("localization degraded: " + msg) {}
};

struct InsufficientData : SimError {
    explicit InsufficientData(const std::string& msg) : SimError("insufficient data: " + msg) {}
};

struct IoError : SimError {
    explicit IoError(const std::string& msg) : SimError("io: " + msg) {}
};

}  // namespace csim
