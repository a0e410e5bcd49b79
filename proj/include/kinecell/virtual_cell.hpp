#pragma once

#include <vector>

#include "kinecell/level_set.hpp"
#include "kinecell/space_grid.hpp"
#include "kinecell/types.hpp"

namespace kinecell {

enum class CellType : unsigned char { Gas = 0, Cut = 1, Solid = 2 };

/// The gaseous part of one Cartesian cell, represented by five possibly
/// degenerate edges. Edge order in L: Lx-, Lx+, Ly-, Ly+.
struct VirtualCellGeom {
    CellType type = CellType::Gas;
    double L[4] = {0, 0, 0, 0};
    double Lw = 0.0;
    Vec2 n_w = Vec2::Zero();  // unit, outward from gas (into the solid)
    Vec2 x_w = Vec2::Zero();  // wall-edge midpoint
    double area = 0.0;
    bool tangent = false;  // wall edge collapsed to a point and got clamped

    double lxm() const { return L[0]; }
    double lxp() const { return L[1]; }
    double lym() const { return L[2]; }
    double lyp() const { return L[3]; }
};

/// Gas if all corner values are positive, Solid if all negative, Cut otherwise.
CellType classify_cell(const double phi_corners[4]);

/// Cut-cell reconstruction from clamped corner values. Corners are ordered
/// (-,-), (+,-), (+,+), (-,+). Intersection points come from linear
/// interpolation along crossed edges; Cartesian edge lengths from the
/// gas-indicator products; the wall normal from the Green identity
/// Lw n_w = (Lx- - Lx+, Ly- - Ly+); the area from the five-edge Green sum.
/// Four crossed edges (a solid feature thinner than the cell) raise
/// GeometryError: the grid must be refined.
VirtualCellGeom virtual_cell_geometry(const double phi_corners[4], const Vec2 corner_coords[4]);

/// Per-cell geometry over the whole mesh.
std::vector<VirtualCellGeom> build_geometry(const LevelSetField& ls, const SpaceGrid& grid);

}  // namespace kinecell
