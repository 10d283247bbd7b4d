#include "bonnet/errors.hpp"

namespace bonnet {

const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::ok: return "ok";
        case ErrorCode::invalid_argument: return "invalid-argument";
        case ErrorCode::no_critical_omega: return "no-critical-omega";
        case ErrorCode::truncation_tail: return "truncation-tail-too-large";
        case ErrorCode::pole_proximity: return "pole-proximity";
        case ErrorCode::no_real_oval: return "no-real-oval";
        case ErrorCode::wrong_oval_type: return "wrong-type";
        case ErrorCode::oval_outside_q3: return "oval-not-inside-Q3-oval";
        case ErrorCode::quadrature_tolerance: return "quadrature-tolerance-unmet";
        case ErrorCode::qtilde_vanishes: return "qtilde-vanishes-on-oval";
        case ErrorCode::no_convergence: return "no-convergence";
        case ErrorCode::degenerate_jacobian: return "degenerate-jacobian";
        case ErrorCode::constraint_violation: return "constraint-violation";
        case ErrorCode::axis_undefined: return "axis-undefined";
        case ErrorCode::path_dependence: return "path-dependence";
        case ErrorCode::quad_incompatible: return "quad-incompatibility";
        case ErrorCode::stalled_optimization: return "stalled-optimization";
        case ErrorCode::io_failure: return "io-failure";
        case ErrorCode::grid_mismatch: return "grid-mismatch";
    }
    return "unknown";
}

}  // namespace bonnet
