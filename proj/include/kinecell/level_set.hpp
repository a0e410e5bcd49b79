#pragma once

#include <functional>
#include <vector>

#include "kinecell/space_grid.hpp"
#include "kinecell/types.hpp"

namespace kinecell {

/// Signed distance to the gas/solid interface at grid corner nodes, positive
/// in gas, negative in solid, clamped away from zero.
struct LevelSetField {
    std::vector<double> phi;  // node-indexed, (nx+1)*(ny+1)
    double clamp = 0.0;       // 1e-10 * dx

    /// Corner values of cell (i,j) in the order (-,-), (+,-), (+,+), (-,+).
    void corners(const SpaceGrid& g, int i, int j, double out[4]) const {
        out[0] = phi[static_cast<size_t>(g.node_index(i, j))];
        out[1] = phi[static_cast<size_t>(g.node_index(i + 1, j))];
        out[2] = phi[static_cast<size_t>(g.node_index(i + 1, j + 1))];
        out[3] = phi[static_cast<size_t>(g.node_index(i, j + 1))];
    }
};

using SignedDistanceFn = std::function<double(const Vec2&)>;

/// Evaluates the signed distance at every corner node, then clamps:
/// phi := sign(phi) * max(|phi|, 1e-10 dx), with nodes exactly on the
/// boundary pushed to the gas side.
LevelSetField sample_levelset(const SignedDistanceFn& sdf, const SpaceGrid& grid);

inline double corner_average(const double c[4]) {
    return 0.25 * (c[0] + c[1] + c[2] + c[3]);
}

}  // namespace kinecell
