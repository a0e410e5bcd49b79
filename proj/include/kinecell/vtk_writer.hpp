#pragma once

#include <string>

#include "kinecell/solver.hpp"

namespace kinecell {

/// Legacy-ASCII VTK structured-points snapshot of the macroscopic fields:
/// rho, u (zero-padded to 3 components), T, P and cell_type (0 gas, 1 cut,
/// 2 solid). Solid cells carry zero fields.
void write_fields(const Solver& solver, const std::string& path);

}  // namespace kinecell
