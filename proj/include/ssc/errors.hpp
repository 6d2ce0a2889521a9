#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssc {

enum class ErrorCode {
    InvalidArgument,
    InversionOfZero,
    PrecisionExhausted,
    InsufficientPrecision,
    BoxTooLarge,
    PrimeMismatch,
    Overflow,
    BoundExceeded,
    ExcludedCase,
    NonIntegerResult,
    EvenResidue,
    ShellNotVanishing,
    UnclassifiedElement,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InversionOfZero: return "InversionOfZero";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::BoxTooLarge: return "BoxTooLarge";
    case ErrorCode::PrimeMismatch: return "PrimeMismatch";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::ExcludedCase: return "ExcludedCase";
    case ErrorCode::NonIntegerResult: return "NonIntegerResult";
    case ErrorCode::EvenResidue: return "EvenResidue";
    case ErrorCode::ShellNotVanishing: return "ShellNotVanishing";
    case ErrorCode::UnclassifiedElement: return "UnclassifiedElement";
    }
    return "Unknown";
}

/// Typed failure raised by every module. `qualified()` gives the
/// module-qualified code (e.g. "padic.BoxTooLarge") used in reports.
class Error : public std::runtime_error {
public:
    Error(std::string_view module, ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(module) + "." + std::string(to_string(code)) + ": " + what),
          module_(module),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& module() const noexcept { return module_; }
    std::string qualified() const { return module_ + "." + std::string(to_string(code_)); }

private:
    std::string module_;
    ErrorCode code_;
};

/// Budget and precision failures are the ones a caller can fix by
/// changing run parameters; the CLI maps them to a distinct exit status.
inline bool is_resource_error(ErrorCode code) {
    return code == ErrorCode::BoxTooLarge || code == ErrorCode::PrecisionExhausted ||
           code == ErrorCode::InsufficientPrecision || code == ErrorCode::BoundExceeded ||
           code == ErrorCode::ShellNotVanishing || code == ErrorCode::Overflow;
}

} // namespace ssc
