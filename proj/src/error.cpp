#include "pat1d/error.hpp"

namespace pat1d {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Domain: return "domain error";
        case ErrorKind::Resolution: return "resolution error";
        case ErrorKind::InsufficientData: return "insufficient data";
        case ErrorKind::Conditioning: return "conditioning error";
        case ErrorKind::Configuration: return "configuration error";
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::Io: return "I/O error";
    }
    return "error";
}

}  // namespace pat1d
