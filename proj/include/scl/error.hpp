#pragma once

#include <stdexcept>
#include <string>

namespace scl {

// Error taxonomy. `validation` maps to CLI exit code 2, `numeric` to 3.
enum class errc {
    non_unit,
    not_a_rotation,
    out_of_domain,
    junction_mismatch,
    not_immersed,
    refinement_exceeded,
    degenerate,
    non_convergence,
    not_locally_convex,
    not_generic,
    endpoint_mismatch,
    not_in_x1,
    not_in_a,
    missing_petal_family,
    convexity_failed,
    validity_failed,
    non_regular,
    residual_too_large,
    parse_error,
    schema_error,
    invariant_violation,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::non_unit: return "NonUnit";
        case errc::not_a_rotation: return "NotARotation";
        case errc::out_of_domain: return "OutOfDomain";
        case errc::junction_mismatch: return "JunctionMismatch";
        case errc::not_immersed: return "NotImmersed";
        case errc::refinement_exceeded: return "RefinementExceeded";
        case errc::degenerate: return "Degenerate";
        case errc::non_convergence: return "NonConvergence";
        case errc::not_locally_convex: return "NotLocallyConvex";
        case errc::not_generic: return "NotGeneric";
        case errc::endpoint_mismatch: return "EndpointMismatch";
        case errc::not_in_x1: return "NotInX1";
        case errc::not_in_a: return "NotInA";
        case errc::missing_petal_family: return "MissingPetalFamily";
        case errc::convexity_failed: return "ConvexityFailed";
        case errc::validity_failed: return "ValidityFailed";
        case errc::non_regular: return "NonRegular";
        case errc::residual_too_large: return "ResidualTooLarge";
        case errc::parse_error: return "ParseError";
        case errc::schema_error: return "SchemaError";
        case errc::invariant_violation: return "InvariantViolation";
    }
    return "Unknown";
}

// True for input/contract problems, false for numeric non-convergence.
inline bool is_validation_error(errc c) {
    switch (c) {
        case errc::refinement_exceeded:
        case errc::non_convergence:
        case errc::convexity_failed:
        case errc::validity_failed:
        case errc::non_regular:
        case errc::residual_too_large:
            return false;
        default:
            return true;
    }
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace scl
