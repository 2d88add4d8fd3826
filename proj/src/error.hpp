#pragma once

#include <stdexcept>
#include <string>

namespace linefree {

enum class ErrorKind {
    Input,        // caller supplied an out-of-range or inconsistent value
    Parse,        // malformed grid / certificate text
    Unsupported,  // operation not defined for this dimension or prime
    Resource,     // memory or size budget exceeded
    Io,
    Internal,     // an invariant failed; always a bug
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

inline void require(bool condition, const std::string& message)
{
    if (!condition)
        throw Error(ErrorKind::Input, message);
}

}  // namespace linefree
