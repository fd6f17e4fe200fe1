#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entroseal {

enum class ErrorKind {
    Precondition,   // operand lengths, degrees, ranges
    Configuration,  // unknown/unavailable backend, bad option
    Parameter,      // scheme parameters violate a bound
    Format,         // malformed ciphertext bytes
    Resource,       // enumeration budget exceeded
    Domain,         // mathematical domain violated (e.g. sigma does not dominate rho)
    Environment,    // entropy source or I/O failure
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message);
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &message);

inline void require(bool condition, ErrorKind kind, const std::string &message) {
    if (!condition) {
        fail(kind, message);
    }
}

// Literal messages skip the std::string construction on the passing path.
inline void require(bool condition, ErrorKind kind, const char *message) {
    if (!condition) {
        fail(kind, message);
    }
}

}  // namespace entroseal
