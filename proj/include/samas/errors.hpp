#pragma once
// Error taxonomy shared across the library. Every failure carries a stable
// code so batch drivers can embed machine-readable errors in their output
// instead of aborting a whole run.

#include <stdexcept>
#include <string>

namespace samas {

enum class ErrorCode {
    EmptySegment,
    SignalTooShort,
    OddLength,
    IndivisibleLength,
    UnsupportedLevel,
    ShapeMismatch,
    ZeroEnergy,
    InvalidDistribution,
    DegenerateLabels,
    EmptyInput,
    EmptyReference,
    BackendFailure,
    EmptyResponse,
    ConfigError,
    ProfileUnachievable,
    ParseError,
    IdMismatch,
    MissingTargetLang,
    UnresolvedPlaceholder,
    UnknownFilter,
    InternalError,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::EmptySegment: return "empty_segment";
        case ErrorCode::SignalTooShort: return "signal_too_short";
        case ErrorCode::OddLength: return "odd_length";
        case ErrorCode::IndivisibleLength: return "indivisible_length";
        case ErrorCode::UnsupportedLevel: return "unsupported_level";
        case ErrorCode::ShapeMismatch: return "shape_mismatch";
        case ErrorCode::ZeroEnergy: return "zero_energy";
        case ErrorCode::InvalidDistribution: return "invalid_distribution";
        case ErrorCode::DegenerateLabels: return "degenerate_labels";
        case ErrorCode::EmptyInput: return "empty_input";
        case ErrorCode::EmptyReference: return "empty_reference";
        case ErrorCode::BackendFailure: return "backend_failure";
        case ErrorCode::EmptyResponse: return "empty_response";
        case ErrorCode::ConfigError: return "config_error";
        case ErrorCode::ProfileUnachievable: return "profile_unachievable";
        case ErrorCode::ParseError: return "parse_error";
        case ErrorCode::IdMismatch: return "id_mismatch";
        case ErrorCode::MissingTargetLang: return "missing_target_lang";
        case ErrorCode::UnresolvedPlaceholder: return "unresolved_placeholder";
        case ErrorCode::UnknownFilter: return "unknown_filter";
        case ErrorCode::InternalError: return "internal_error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace samas
