#pragma once

#include <stdexcept>
#include <string>

namespace bonnet {

enum class ErrorCode : int {
    ok = 0,
    invalid_argument = 2,
    no_critical_omega = 3,
    truncation_tail = 4,
    pole_proximity = 5,
    no_real_oval = 6,
    wrong_oval_type = 7,
    oval_outside_q3 = 8,
    quadrature_tolerance = 9,
    qtilde_vanishes = 10,
    no_convergence = 11,
    degenerate_jacobian = 12,
    constraint_violation = 13,
    axis_undefined = 14,
    path_dependence = 15,
    quad_incompatible = 16,
    stalled_optimization = 17,
    io_failure = 18,
    grid_mismatch = 19,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& what) : std::runtime_error(what), code_(c) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace bonnet
