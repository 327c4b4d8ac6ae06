#pragma once

#include <stdexcept>
#include <string>

namespace abreu {

/// Bad input data or file (CLI exit code 2).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation outside the admissible domain (boundary point, escaped
/// section, non-PD Hessian).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solver failed to converge (CLI exit code 3).
struct solve_diverged : std::runtime_error {
    solve_diverged(const std::string& what, double residual)
        : std::runtime_error(what), last_residual(residual) {}
    double last_residual;
};

} // namespace abreu
