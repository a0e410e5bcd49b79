#include "kinecell/velocity_grid.hpp"

#include <cmath>

namespace kinecell {

VelocityGrid build_velocity_grid(const Vec2& v_min, const Vec2& v_max, int n) {
    if (n < 2) throw ConfigError("velocity grid needs at least 2 nodes per axis");
    if (!(v_max.x() > v_min.x()) || !(v_max.y() > v_min.y()))
        throw ConfigError("velocity grid bounds are inverted or empty");

    VelocityGrid g;
    g.v_min = v_min;
    g.v_max = v_max;
    g.n = n;
    g.dv = (v_max - v_min) / static_cast<double>(n);
    g.vx.resize(static_cast<size_t>(n) * n);
    g.vy.resize(static_cast<size_t>(n) * n);
    for (int p2 = 0; p2 < n; ++p2) {
        for (int p1 = 0; p1 < n; ++p1) {
            const size_t p = static_cast<size_t>(p2) * n + p1;
            g.vx[p] = v_min.x() + p1 * g.dv.x();
            g.vy[p] = v_min.y() + p2 * g.dv.y();
        }
    }
    return g;
}

VelocityGrid symmetric_velocity_grid(const Vec2& half_span, int n) {
    if (n < 2) throw ConfigError("velocity grid needs at least 2 nodes per axis");
    if (!(half_span.x() > 0.0) || !(half_span.y() > 0.0))
        throw ConfigError("velocity grid half-span must be positive");
    const Vec2 dv(2.0 * half_span.x() / (n - 1), 2.0 * half_span.y() / (n - 1));
    return build_velocity_grid(-half_span, -half_span + static_cast<double>(n) * dv, n);
}

Vec2 VelocityGrid::max_abs() const {
    double mx = 0.0, my = 0.0;
    for (int p1 = 0; p1 < n; ++p1) mx = std::max(mx, std::abs(v_min.x() + p1 * dv.x()));
    for (int p2 = 0; p2 < n; ++p2) my = std::max(my, std::abs(v_min.y() + p2 * dv.y()));
    return {mx, my};
}

std::vector<int> VelocityGrid::mirror_vy() const {
    // One-dimensional search along v_y; grid nodes are axis-separable.
    const double tol = 1e-12 * (std::abs(dv.y()) + std::abs(v_min.y()) + std::abs(v_max.y()));
    std::vector<int> row(static_cast<size_t>(n), -1);
    for (int p2 = 0; p2 < n; ++p2) {
        const double v = v_min.y() + p2 * dv.y();
        const double k = (-v - v_min.y()) / dv.y();
        const int p2m = static_cast<int>(std::lround(k));
        if (p2m < 0 || p2m >= n || std::abs(v_min.y() + p2m * dv.y() + v) > tol)
            throw ConfigError("velocity grid is not symmetric in v_y (specular reflection unusable)");
        row[static_cast<size_t>(p2)] = p2m;
    }
    std::vector<int> perm(static_cast<size_t>(count()));
    for (int p2 = 0; p2 < n; ++p2)
        for (int p1 = 0; p1 < n; ++p1)
            perm[static_cast<size_t>(p2) * n + p1] = row[static_cast<size_t>(p2)] * n + p1;
    return perm;
}

bool VelocityGrid::contains(const Vec2& u) const {
    const Vec2 last = v_min + static_cast<double>(n - 1) * dv;
    return u.x() >= v_min.x() && u.x() <= last.x() && u.y() >= v_min.y() && u.y() <= last.y();
}

}  // namespace kinecell
