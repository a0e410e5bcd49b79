#include "kinecell/control_volume.hpp"

#include <numeric>

namespace kinecell {

namespace {

bool is_terminal(const VirtualCellGeom& g, const LevelSetField& ls, const SpaceGrid& grid, int i,
                 int j) {
    double c[4];
    ls.corners(grid, i, j, c);
    return corner_average(c) > 0.0 && g.area >= 0.5 * grid.cell_area();
}

}  // namespace

std::pair<int, int> find_master_cell(int i, int j, const std::vector<VirtualCellGeom>& geo,
                                     const LevelSetField& ls, const SpaceGrid& grid) {
    if (geo[static_cast<size_t>(grid.cell_index(i, j))].type == CellType::Solid)
        throw GeometryError("find_master_cell called on a solid cell");

    const int budget = grid.nx + grid.ny;
    for (int step = 0; step <= budget; ++step) {
        const VirtualCellGeom& g = geo[static_cast<size_t>(grid.cell_index(i, j))];
        if (is_terminal(g, ls, grid, i, j)) return {i, j};

        // Step across the largest Cartesian edge; candidate order fixes ties.
        struct Cand {
            double len;
            int di, dj;
        };
        const Cand cands[4] = {{g.lxp(), 1, 0}, {g.lxm(), -1, 0}, {g.lyp(), 0, 1}, {g.lym(), 0, -1}};
        double best = -1.0;
        int bi = i, bj = j;
        for (const Cand& c : cands) {
            const int ni = i + c.di, nj = j + c.dj;
            if (ni < 0 || ni >= grid.nx || nj < 0 || nj >= grid.ny) continue;
            if (c.len > best) {
                best = c.len;
                bi = ni;
                bj = nj;
            }
        }
        if (best <= 0.0)
            throw GeometryError("merge walk stuck at cell (" + std::to_string(i) + "," +
                                std::to_string(j) + "): no gas edge to follow");
        i = bi;
        j = bj;
    }
    throw GeometryError("merge walk exceeded its step budget: malformed level set");
}

ControlVolumeMap accumulate_control_volumes(const std::vector<VirtualCellGeom>& geo,
                                            const LevelSetField& ls, const SpaceGrid& grid) {
    const int nc = grid.cell_count();
    ControlVolumeMap cv;
    cv.master.assign(static_cast<size_t>(nc), -1);
    cv.delta.assign(static_cast<size_t>(nc), 0);
    cv.cv_area.assign(static_cast<size_t>(nc), 0.0);
    cv.master_slot.assign(static_cast<size_t>(nc), -1);

    std::vector<uint8_t> cv_has_cut(static_cast<size_t>(nc), 0);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const int c = grid.cell_index(i, j);
            const VirtualCellGeom& g = geo[static_cast<size_t>(c)];
            if (g.type == CellType::Solid) continue;
            int m = c;
            if (g.type == CellType::Cut && !is_terminal(g, ls, grid, i, j)) {
                const auto [mi, mj] = find_master_cell(i, j, geo, ls, grid);
                m = grid.cell_index(mi, mj);
            }
            cv.master[static_cast<size_t>(c)] = m;
            cv.cv_area[static_cast<size_t>(m)] += g.area;
            if (g.type == CellType::Cut) cv_has_cut[static_cast<size_t>(m)] = 1;
        }
    }

    std::vector<int32_t> count(static_cast<size_t>(nc), 0);
    for (int c = 0; c < nc; ++c) {
        const int m = cv.master[static_cast<size_t>(c)];
        if (m < 0) continue;
        if (m == c) cv.delta[static_cast<size_t>(c)] = 1;
        ++count[static_cast<size_t>(m)];
    }

    for (int c = 0; c < nc; ++c) {
        if (cv.master[static_cast<size_t>(c)] == c) {
            cv.master_slot[static_cast<size_t>(c)] = static_cast<int32_t>(cv.masters.size());
            cv.masters.push_back(c);
        }
    }

    cv.member_begin.assign(cv.masters.size() + 1, 0);
    for (size_t s = 0; s < cv.masters.size(); ++s)
        cv.member_begin[s + 1] =
            cv.member_begin[s] + count[static_cast<size_t>(cv.masters[s])];
    cv.member_cells.resize(static_cast<size_t>(cv.member_begin.back()));
    std::vector<int32_t> fill(cv.masters.size(), 0);
    for (int c = 0; c < nc; ++c) {
        const int m = cv.master[static_cast<size_t>(c)];
        if (m < 0) continue;
        const int s = cv.master_slot[static_cast<size_t>(m)];
        cv.member_cells[static_cast<size_t>(cv.member_begin[static_cast<size_t>(s)] +
                                            fill[static_cast<size_t>(s)]++)] = c;
    }

    const double floor_area = 0.5 * grid.cell_area();
    for (int32_t m : cv.masters) {
        if (cv_has_cut[static_cast<size_t>(m)] && cv.cv_area[static_cast<size_t>(m)] < floor_area)
            throw GeometryError("control volume at cell " + std::to_string(m) +
                                " fell below half a Cartesian cell");
    }
    return cv;
}

}  // namespace kinecell
