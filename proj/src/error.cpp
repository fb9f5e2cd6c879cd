#include "orderable/error.hpp"

namespace orderable {

const char* fault_name(NumericFault fault) noexcept {
    switch (fault) {
        case NumericFault::Domain: return "Domain";
        case NumericFault::DegenerateLeading: return "DegenerateLeading";
        case NumericFault::BracketSign: return "BracketSign";
        case NumericFault::NonConvergence: return "NonConvergence";
        case NumericFault::BranchCollision: return "BranchCollision";
        case NumericFault::BranchDiscontinuity: return "BranchDiscontinuity";
        case NumericFault::Elliptic: return "Elliptic";
        case NumericFault::SingularDenominator: return "SingularDenominator";
        case NumericFault::NotUpperTriangular: return "NotUpperTriangular";
        case NumericFault::NotHyperbolic: return "NotHyperbolic";
        case NumericFault::AmbiguousIndex: return "AmbiguousIndex";
        case NumericFault::NotFound: return "NotFound";
        case NumericFault::IndexConditionFailed: return "IndexConditionFailed";
    }
    return "Unknown";
}

}  // namespace orderable
