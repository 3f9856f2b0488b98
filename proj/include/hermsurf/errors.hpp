#pragma once

#include <stdexcept>
#include <string>

namespace hermsurf {

enum class ErrorKind {
    NonPositiveMetric,
    DerivativeUnavailable,
    DegenerateConformalFactor,
    CircleThroughZero,
    NotImmersive,
    NotConformal,
    NonIsolatedZeroSuspected,
    AdaptedFrameDegenerate,
    ExcisionTooLarge,
    NotGeneric,
    NotChernMinimal,
    LineSearchStalled,
    ConfigError,
    MissingDump,
    IoError,
};

const char* to_string(ErrorKind kind);

/// Error raised by every module; carries the kind plus module/operation context.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// Message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonPositiveMetric: return "NonPositiveMetric";
    case ErrorKind::DerivativeUnavailable: return "DerivativeUnavailable";
    case ErrorKind::DegenerateConformalFactor: return "DegenerateConformalFactor";
    case ErrorKind::CircleThroughZero: return "CircleThroughZero";
    case ErrorKind::NotImmersive: return "NotImmersive";
    case ErrorKind::NotConformal: return "NotConformal";
    case ErrorKind::NonIsolatedZeroSuspected: return "NonIsolatedZeroSuspected";
    case ErrorKind::AdaptedFrameDegenerate: return "AdaptedFrameDegenerate";
    case ErrorKind::ExcisionTooLarge: return "ExcisionTooLarge";
    case ErrorKind::NotGeneric: return "NotGeneric";
    case ErrorKind::NotChernMinimal: return "NotChernMinimal";
    case ErrorKind::LineSearchStalled: return "LineSearchStalled";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::MissingDump: return "MissingDump";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace hermsurf
