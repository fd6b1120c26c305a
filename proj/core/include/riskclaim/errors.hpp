#pragma once

#include <stdexcept>
#include <string>

namespace riskclaim {

enum class ErrorKind {
    InvalidParameter,
    UnsupportedDensity,
    NoBracket,
    BracketFailure,
    NonConvergence,
    Infeasible,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Raised by the text grammars; position is a 0-based character offset.
class SpecError : public std::runtime_error {
public:
    SpecError(const std::string& what, std::size_t position);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace riskclaim
