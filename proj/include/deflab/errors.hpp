#pragma once

#include <stdexcept>
#include <string>

namespace deflab {

enum class ErrorKind {
    BadInput,
    BadMeasure,
    NonRefiningFiltration,
    NotAdapted,
    NotAStoppingTime,
    NotPredictable,
    NotAMartingale,
    NotADeflator,
    NonPositive,
    DecompositionDomainViolation,
    ReductionImpossible,
    JumpAtTau,
    JumpAtEtaTilde,
    EquationNotSatisfied,
    NonVanishingAtEtaDdot,
    EtaStopFails,
    B1Violated,
    UnrealizableClass,
    Internal,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::BadInput: return "BadInput";
        case ErrorKind::BadMeasure: return "BadMeasure";
        case ErrorKind::NonRefiningFiltration: return "NonRefiningFiltration";
        case ErrorKind::NotAdapted: return "NotAdapted";
        case ErrorKind::NotAStoppingTime: return "NotAStoppingTime";
        case ErrorKind::NotPredictable: return "NotPredictable";
        case ErrorKind::NotAMartingale: return "NotAMartingale";
        case ErrorKind::NotADeflator: return "NotADeflator";
        case ErrorKind::NonPositive: return "NonPositive";
        case ErrorKind::DecompositionDomainViolation: return "DecompositionDomainViolation";
        case ErrorKind::ReductionImpossible: return "ReductionImpossible";
        case ErrorKind::JumpAtTau: return "JumpAtTau";
        case ErrorKind::JumpAtEtaTilde: return "JumpAtEtaTilde";
        case ErrorKind::EquationNotSatisfied: return "EquationNotSatisfied";
        case ErrorKind::NonVanishingAtEtaDdot: return "NonVanishingAtEtaDdot";
        case ErrorKind::EtaStopFails: return "EtaStopFails";
        case ErrorKind::B1Violated: return "B1Violated";
        case ErrorKind::UnrealizableClass: return "UnrealizableClass";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace deflab
