// Error taxonomy shared by all qcorbit modules.
//
// Every failure mode that callers are expected to handle gets its own kind;
// the CLI maps kinds onto exit-code classes (I/O, contract, budget, numeric).

#pragma once

#include <stdexcept>
#include <string>

namespace qcorbit {

enum class ErrorKind {
    // contract violations
    OverlapMismatch,
    InadmissibleWord,
    InadmissiblePoint,
    WordTooShort,
    ShapeMismatch,
    NegativeDeterminant,
    DimensionTooSmall,
    EmptyResult,
    TargetTooFar,
    PeriodProductNotIdentity,
    NoRecurrence,
    SeparationFailed,
    BadInput,
    // budget exhaustion
    MeshTooLarge,
    EnumerationBudget,
    FragmentationBudget,
    SearchExhausted,
    NoTransitionApplies,
    // numeric failures
    Singular,
    SlackExhausted,
    DegenerateBudget,
    CertificateFailed,
    // i/o
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::OverlapMismatch: return "OverlapMismatch";
        case ErrorKind::InadmissibleWord: return "InadmissibleWord";
        case ErrorKind::InadmissiblePoint: return "InadmissiblePoint";
        case ErrorKind::WordTooShort: return "WordTooShort";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::NegativeDeterminant: return "NegativeDeterminant";
        case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
        case ErrorKind::EmptyResult: return "EmptyResult";
        case ErrorKind::TargetTooFar: return "TargetTooFar";
        case ErrorKind::PeriodProductNotIdentity: return "PeriodProductNotIdentity";
        case ErrorKind::NoRecurrence: return "NoRecurrence";
        case ErrorKind::SeparationFailed: return "SeparationFailed";
        case ErrorKind::BadInput: return "BadInput";
        case ErrorKind::MeshTooLarge: return "MeshTooLarge";
        case ErrorKind::EnumerationBudget: return "EnumerationBudget";
        case ErrorKind::FragmentationBudget: return "FragmentationBudget";
        case ErrorKind::SearchExhausted: return "SearchExhausted";
        case ErrorKind::NoTransitionApplies: return "NoTransitionApplies";
        case ErrorKind::Singular: return "Singular";
        case ErrorKind::SlackExhausted: return "SlackExhausted";
        case ErrorKind::DegenerateBudget: return "DegenerateBudget";
        case ErrorKind::CertificateFailed: return "CertificateFailed";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

// Exit-code classes used by the CLI: 0 success, 2 i/o, 3 contract, 4 budget, 5 numeric.
inline int error_exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Io:
            return 2;
        case ErrorKind::MeshTooLarge:
        case ErrorKind::EnumerationBudget:
        case ErrorKind::FragmentationBudget:
        case ErrorKind::SearchExhausted:
        case ErrorKind::NoTransitionApplies:
            return 4;
        case ErrorKind::Singular:
        case ErrorKind::SlackExhausted:
        case ErrorKind::DegenerateBudget:
        case ErrorKind::CertificateFailed:
            return 5;
        default:
            return 3;
    }
}

}  // namespace qcorbit
