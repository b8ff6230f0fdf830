#include "ltorsion/error.hpp"

namespace ltorsion {

std::string_view to_string(Errc code) {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::NotPrime: return "NotPrime";
        case Errc::NotSquarefree: return "NotSquarefree";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::OddComplexCount: return "OddComplexCount";
        case Errc::IndexDivisorUnsupported: return "IndexDivisorUnsupported";
        case Errc::MissingSplitting: return "MissingSplitting";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::NoMethodAvailable: return "NoMethodAvailable";
        case Errc::NotFundamental: return "NotFundamental";
        case Errc::DiscriminantMismatch: return "DiscriminantMismatch";
        case Errc::PoleAtMinusOne: return "PoleAtMinusOne";
        case Errc::ToleranceNotMet: return "ToleranceNotMet";
        case Errc::DegenerateField: return "DegenerateField";
        case Errc::DomainTooSmall: return "DomainTooSmall";
        case Errc::Io: return "Io";
        case Errc::SchemaViolation: return "SchemaViolation";
    }
    return "Unknown";
}

namespace {
std::string compose_message(std::string_view module, Errc code, const std::string& detail) {
    std::string msg(module);
    msg += ": ";
    msg += to_string(code);
    if (!detail.empty()) {
        msg += ": ";
        msg += detail;
    }
    return msg;
}
}  // namespace

Error::Error(std::string_view module, Errc code, const std::string& detail)
    : std::runtime_error(compose_message(module, code, detail)),
      module_(module),
      code_(code),
      detail_(detail) {}

void fail(std::string_view module, Errc code, const std::string& detail) {
    throw Error(module, code, detail);
}

}  // namespace ltorsion
