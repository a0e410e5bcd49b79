#pragma once

#include "kinecell/types.hpp"

namespace kinecell {

/// Cartesian space mesh: (nx+1) x (ny+1) corner nodes, nx x ny cells.
/// Node (i,j) sits at x_min + (i dx, j dy); cell (i,j) is the rectangle with
/// corner nodes (i,j)..(i+1,j+1) and center offset by half a spacing.
struct SpaceGrid {
    Vec2 x_min = Vec2::Zero();
    Vec2 x_max = Vec2::Zero();
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;

    int cell_count() const { return nx * ny; }
    int cell_index(int i, int j) const { return j * nx + i; }
    int node_index(int i, int j) const { return j * (nx + 1) + i; }
    Vec2 node(int i, int j) const { return x_min + Vec2(i * dx, j * dy); }
    Vec2 center(int i, int j) const { return x_min + Vec2((i + 0.5) * dx, (j + 0.5) * dy); }
    double cell_area() const { return dx * dy; }
};

inline SpaceGrid build_space_grid(const Vec2& x_min, const Vec2& x_max, int nx, int ny) {
    if (nx < 1 || ny < 1) throw ConfigError("space grid needs at least one cell per axis");
    if (!(x_max.x() > x_min.x()) || !(x_max.y() > x_min.y()))
        throw ConfigError("space grid bounds are inverted or empty");
    SpaceGrid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.nx = nx;
    g.ny = ny;
    g.dx = (x_max.x() - x_min.x()) / nx;
    g.dy = (x_max.y() - x_min.y()) / ny;
    return g;
}

}  // namespace kinecell
