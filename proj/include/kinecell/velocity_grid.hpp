#pragma once

#include <vector>

#include "kinecell/types.hpp"

namespace kinecell {

/// Cartesian grid of microscopic velocities. Node p = p2*n + p1 sits at
/// v_min + (p1*dv_x, p2*dv_y); the quadrature weight is the flat dv_x*dv_y.
struct VelocityGrid {
    Vec2 v_min = Vec2::Zero();
    Vec2 v_max = Vec2::Zero();
    int n = 0;  // nodes per axis
    Vec2 dv = Vec2::Zero();
    std::vector<double> vx;  // per node, flattened
    std::vector<double> vy;

    int count() const { return n * n; }
    double weight() const { return dv.x() * dv.y(); }
    Vec2 node(int p) const { return {vx[static_cast<size_t>(p)], vy[static_cast<size_t>(p)]}; }

    /// Largest |v| component over the node set, per axis.
    Vec2 max_abs() const;

    /// Index permutation p -> p' with v_{p'} = (v_x, -v_y), or throws
    /// ConfigError when the node set is not symmetric in v_y.
    std::vector<int> mirror_vy() const;

    /// True when every component of u lies inside the node hull.
    bool contains(const Vec2& u) const;
};

VelocityGrid build_velocity_grid(const Vec2& v_min, const Vec2& v_max, int n);

/// Grid whose nodes span [-a, a] per axis symmetrically (v_min = -a,
/// v_max = a + dv), so v -> -v maps nodes onto nodes.
VelocityGrid symmetric_velocity_grid(const Vec2& half_span, int n);

}  // namespace kinecell
