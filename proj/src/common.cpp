#include "ndp/common.hpp"

namespace ndp {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::OutOfBounds: return "out-of-bounds";
        case ErrorKind::Capacity: return "capacity";
        case ErrorKind::Placement: return "placement";
        case ErrorKind::Spacing: return "spacing";
        case ErrorKind::Contract: return "contract";
        case ErrorKind::Partition: return "partition";
        case ErrorKind::Parameter: return "parameter";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Threshold: return "threshold";
        case ErrorKind::Parse: return "parse";
    }
    return "unknown";
}

}  // namespace ndp
