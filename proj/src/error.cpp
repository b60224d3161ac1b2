#include "biharm/error.hpp"

namespace biharm {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::usage: return "usage";
    case ErrorKind::singular_value: return "singular_value";
    case ErrorKind::domain: return "domain";
    case ErrorKind::parse: return "parse";
    case ErrorKind::unbound: return "unbound_identifier";
    case ErrorKind::degenerate: return "degenerate_immersion";
    case ErrorKind::warp_domain: return "warp_domain";
    case ErrorKind::scene_format: return "scene_format";
    case ErrorKind::scene_invalid: return "scene_invalid";
    }
    return "unknown";
}

} // namespace biharm
