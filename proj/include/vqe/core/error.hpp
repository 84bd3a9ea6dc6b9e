#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vqe {

// Every failure the engine can raise, one tag per contract error.
// The CLI maps these onto exit codes; see cli/error_map.
enum class ErrorKind {
    // media
    DecodeFailure,
    EmptyVideo,
    InvalidFrame,
    // relevance
    BackendUnreachable,
    DimensionMismatch,
    ZeroNorm,
    EmptyQuery,
    // ecrs
    ZeroEntropyMass,
    InvalidConfig,
    // toolkit
    MalformedPlan,
    AllToolsUnavailable,
    // agents
    EmptyResponse,
    MalformedClarification,
    MalformedReport,
    DimensionOutOfRange,
    MalformedReflection,
    ConfidenceOutOfRange,
    ScriptMismatch,
    // curate
    NoEligibleRecords,
    // cli
    MalformedScenario,
    Internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace vqe
