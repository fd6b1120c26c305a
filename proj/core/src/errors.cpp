#include "riskclaim/errors.hpp"

namespace riskclaim {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidParameter: return "InvalidParameter";
        case ErrorKind::UnsupportedDensity: return "UnsupportedDensity";
        case ErrorKind::NoBracket: return "NoBracket";
        case ErrorKind::BracketFailure: return "BracketFailure";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::Infeasible: return "Infeasible";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

SpecError::SpecError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
      position_(position) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace riskclaim
