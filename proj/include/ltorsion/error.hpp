#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ltorsion {

enum class Errc {
    InvalidArgument,
    NotPrime,
    NotSquarefree,
    CapExceeded,
    OddComplexCount,
    IndexDivisorUnsupported,
    MissingSplitting,
    OutOfRange,
    NoMethodAvailable,
    NotFundamental,
    DiscriminantMismatch,
    PoleAtMinusOne,
    ToleranceNotMet,
    DegenerateField,
    DomainTooSmall,
    Io,
    SchemaViolation,
};

std::string_view to_string(Errc code);

// Every error raised by the library carries the module that raised it, so
// messages read "zeta_arith: CapExceeded: ..." at the CLI boundary.
class Error : public std::runtime_error {
public:
    Error(std::string_view module, Errc code, const std::string& detail);

    Errc code() const noexcept { return code_; }
    const std::string& module() const noexcept { return module_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string module_;
    Errc code_;
    std::string detail_;
};

[[noreturn]] void fail(std::string_view module, Errc code, const std::string& detail);

}  // namespace ltorsion
