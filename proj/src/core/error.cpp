#include "vqe/core/error.hpp"

namespace vqe {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DecodeFailure: return "DecodeFailure";
        case ErrorKind::EmptyVideo: return "EmptyVideo";
        case ErrorKind::InvalidFrame: return "InvalidFrame";
        case ErrorKind::BackendUnreachable: return "BackendUnreachable";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ZeroNorm: return "ZeroNorm";
        case ErrorKind::EmptyQuery: return "EmptyQuery";
        case ErrorKind::ZeroEntropyMass: return "ZeroEntropyMass";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::MalformedPlan: return "MalformedPlan";
        case ErrorKind::AllToolsUnavailable: return "AllToolsUnavailable";
        case ErrorKind::EmptyResponse: return "EmptyResponse";
        case ErrorKind::MalformedClarification: return "MalformedClarification";
        case ErrorKind::MalformedReport: return "MalformedReport";
        case ErrorKind::DimensionOutOfRange: return "DimensionOutOfRange";
        case ErrorKind::MalformedReflection: return "MalformedReflection";
        case ErrorKind::ConfidenceOutOfRange: return "ConfidenceOutOfRange";
        case ErrorKind::ScriptMismatch: return "ScriptMismatch";
        case ErrorKind::NoEligibleRecords: return "NoEligibleRecords";
        case ErrorKind::MalformedScenario: return "MalformedScenario";
        case ErrorKind::Internal: return "Internal";
    }
    return "Internal";
}

}  // namespace vqe
