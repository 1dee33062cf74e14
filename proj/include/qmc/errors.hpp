#ifndef QMC_ERRORS_HPP
#define QMC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmc {

enum class ErrorKind {
    NotIrreducible,
    BasisNotMaximal,
    BasisInconsistent,
    IndexDivisorUnsupported,
    ZeroIdeal,
    ZeroInput,
    PrecisionExhausted,
    RelationSearchBudgetExceeded,
    DeskScaleExceeded,
    EmbeddingCountMismatch,
    FactorizationIncomplete,
    DigitBudgetExceeded,
    NoCandidateWithinBound,
    InvalidRamification,
    PreconditionViolation,
    ParseError,
    DigestMismatch,
    NotTotallyImaginary,
};

std::string_view to_string(ErrorKind k);

/// All library failures are reported through this type; `kind()` is the
/// machine-readable tag, `what()` a human diagnostic.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string const& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

    /// Budget-type failures map to exit code 3 in the CLI.
    bool is_budget() const noexcept
    {
        return kind_ == ErrorKind::FactorizationIncomplete
            || kind_ == ErrorKind::DigitBudgetExceeded
            || kind_ == ErrorKind::RelationSearchBudgetExceeded
            || kind_ == ErrorKind::PrecisionExhausted;
    }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::BasisNotMaximal: return "BasisNotMaximal";
    case ErrorKind::BasisInconsistent: return "BasisInconsistent";
    case ErrorKind::IndexDivisorUnsupported: return "IndexDivisorUnsupported";
    case ErrorKind::ZeroIdeal: return "ZeroIdeal";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::RelationSearchBudgetExceeded: return "RelationSearchBudgetExceeded";
    case ErrorKind::DeskScaleExceeded: return "DeskScaleExceeded";
    case ErrorKind::EmbeddingCountMismatch: return "EmbeddingCountMismatch";
    case ErrorKind::FactorizationIncomplete: return "FactorizationIncomplete";
    case ErrorKind::DigitBudgetExceeded: return "DigitBudgetExceeded";
    case ErrorKind::NoCandidateWithinBound: return "NoCandidateWithinBound";
    case ErrorKind::InvalidRamification: return "InvalidRamification";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DigestMismatch: return "DigestMismatch";
    case ErrorKind::NotTotallyImaginary: return "NotTotallyImaginary";
    }
    return "Unknown";
}

} // namespace qmc

#endif // QMC_ERRORS_HPP
