#include "entroseal/error.hpp"

namespace entroseal {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Precondition:
            return "precondition";
        case ErrorKind::Configuration:
            return "configuration";
        case ErrorKind::Parameter:
            return "parameter";
        case ErrorKind::Format:
            return "format";
        case ErrorKind::Resource:
            return "resource";
        case ErrorKind::Domain:
            return "domain";
        case ErrorKind::Environment:
            return "environment";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace entroseal
