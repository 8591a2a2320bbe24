#include "lle/error.hpp"

namespace lle {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Domain: return "domain error";
        case ErrorKind::Capability: return "capability error";
        case ErrorKind::Numeric: return "numeric error";
        case ErrorKind::Consistency: return "consistency error";
        case ErrorKind::Accuracy: return "accuracy error";
        case ErrorKind::Window: return "window error";
        case ErrorKind::Fit: return "fit error";
        case ErrorKind::Usage: return "usage error";
    }
    return "error";
}

}  // namespace lle
