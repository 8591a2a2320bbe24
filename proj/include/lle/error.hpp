#pragma once

#include <stdexcept>
#include <string>

namespace lle {

// Failure categories. The CLI maps these onto its exit-code contract.
enum class ErrorKind {
    Domain,       // argument outside the mathematical domain
    Capability,   // request exceeds what the implementation supports
    Numeric,      // iteration or quadrature failed to converge
    Consistency,  // two routes that must agree did not
    Accuracy,     // tolerance not met within the work budget
    Window,       // truncation window too small
    Fit,          // ill-conditioned least-squares problem
    Usage,        // malformed user input (CLI, JSON)
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
    if (!condition) fail(kind, what);
}

}  // namespace lle
