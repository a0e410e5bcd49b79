#include "kinecell/virtual_cell.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace kinecell {

CellType classify_cell(const double c[4]) {
    const double m = std::min(std::min(c[0], c[1]), std::min(c[2], c[3]));
    const double M = std::max(std::max(c[0], c[1]), std::max(c[2], c[3]));
    if (m > 0.0) return CellType::Gas;
    if (M < 0.0) return CellType::Solid;
    return CellType::Cut;
}

namespace {

// Edge table: corner indices (a = start, b = end), slot in L[], outward normal.
// Corner order: 0=(-,-), 1=(+,-), 2=(+,+), 3=(-,+).
struct EdgeDef {
    int a, b;
    int slot;
    Vec2 normal;
};

const EdgeDef kEdges[4] = {
    {0, 3, 0, {-1.0, 0.0}},  // x-: left,   length up to dy
    {1, 2, 1, {1.0, 0.0}},   // x+: right
    {0, 1, 2, {0.0, -1.0}},  // y-: bottom, length up to dx
    {3, 2, 3, {0.0, 1.0}},   // y+: top
};

}  // namespace

VirtualCellGeom virtual_cell_geometry(const double phi[4], const Vec2 xc[4]) {
    VirtualCellGeom out;
    out.type = classify_cell(phi);
    const double dx = xc[1].x() - xc[0].x();
    const double dy = xc[3].y() - xc[0].y();

    if (out.type == CellType::Gas) {
        out.L[0] = out.L[1] = dy;
        out.L[2] = out.L[3] = dx;
        out.area = dx * dy;
        return out;
    }
    if (out.type == CellType::Solid) return out;

    bool gas[4];
    for (int c = 0; c < 4; ++c) gas[c] = phi[c] > 0.0;

    Vec2 cross_pt[4];
    bool crossed[4];
    Vec2 gas_mid[4];  // midpoint of the gas segment of each Cartesian edge
    int n_crossed = 0;

    for (const EdgeDef& e : kEdges) {
        const double full = e.slot < 2 ? dy : dx;
        crossed[e.slot] = gas[e.a] != gas[e.b];
        if (crossed[e.slot]) {
            ++n_crossed;
            const double t = phi[e.a] / (phi[e.a] - phi[e.b]);
            cross_pt[e.slot] = xc[e.a] + t * (xc[e.b] - xc[e.a]);
            if (gas[e.a]) {
                out.L[e.slot] = t * full;
                gas_mid[e.slot] = 0.5 * (xc[e.a] + cross_pt[e.slot]);
            } else {
                out.L[e.slot] = (1.0 - t) * full;
                gas_mid[e.slot] = 0.5 * (cross_pt[e.slot] + xc[e.b]);
            }
        } else {
            out.L[e.slot] = gas[e.a] ? full : 0.0;
            gas_mid[e.slot] = 0.5 * (xc[e.a] + xc[e.b]);
        }
    }

    if (n_crossed != 2)
        throw GeometryError(
            "cut cell crossed on four edges: solid feature thinner than a cell, refine the grid");

    Vec2 p[2];
    int k = 0;
    for (int s = 0; s < 4; ++s)
        if (crossed[s]) p[k++] = cross_pt[s];
    out.x_w = 0.5 * (p[0] + p[1]);
    out.Lw = (p[1] - p[0]).norm();
    if (out.Lw < 1e-10 * dx) {
        out.Lw = 1e-10 * dx;
        out.tangent = true;
    }
    out.n_w = Vec2(out.L[0] - out.L[1], out.L[2] - out.L[3]) / out.Lw;

    double s = 0.0;
    for (const EdgeDef& e : kEdges)
        s += out.L[e.slot] * gas_mid[e.slot].dot(e.normal);
    s += out.Lw * out.x_w.dot(out.n_w);
    out.area = 0.5 * s;
    return out;
}

std::vector<VirtualCellGeom> build_geometry(const LevelSetField& ls, const SpaceGrid& grid) {
    std::vector<VirtualCellGeom> geo(static_cast<size_t>(grid.cell_count()));
    std::exception_ptr err;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < grid.ny; ++j) {
        try {
            for (int i = 0; i < grid.nx; ++i) {
                double c[4];
                ls.corners(grid, i, j, c);
                const Vec2 xc[4] = {grid.node(i, j), grid.node(i + 1, j), grid.node(i + 1, j + 1),
                                    grid.node(i, j + 1)};
                geo[static_cast<size_t>(grid.cell_index(i, j))] = virtual_cell_geometry(c, xc);
            }
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return geo;
}

}  // namespace kinecell
