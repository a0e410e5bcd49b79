#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace kinecell {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Bad user-facing configuration (scenario parameters, grids, boundary specs).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or under-resolved cut-cell geometry.
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A state with no usable macroscopic interpretation (rho <= 0, T <= 0).
struct DegenerateStateError : std::runtime_error {
    explicit DegenerateStateError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Iterative solve failure; carries the last residual for diagnostics.
struct SolverError : std::runtime_error {
    SolverError(const std::string& msg, double res)
        : std::runtime_error(msg + " (residual " + std::to_string(res) + ")"), residual(res) {}
    double residual;
};

/// I/O failure, annotated with the offending path.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kinecell
