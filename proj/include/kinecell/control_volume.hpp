#pragma once

#include <cstdint>
#include <vector>

#include "kinecell/level_set.hpp"
#include "kinecell/space_grid.hpp"
#include "kinecell/virtual_cell.hpp"

namespace kinecell {

/// Partition of the non-solid cells into control volumes. Every non-solid
/// cell points at its master; masters carry the accumulated control-volume
/// area; delta marks the (unique) master of each merge set.
struct ControlVolumeMap {
    std::vector<int32_t> master;       // per cell, -1 for solid cells
    std::vector<uint8_t> delta;        // per cell, 1 iff the cell is a master
    std::vector<double> cv_area;       // per cell, nonzero only at masters
    std::vector<int32_t> masters;      // master cell indices, ascending
    std::vector<int32_t> master_slot;  // per cell: position in `masters`, else -1
    std::vector<int32_t> member_begin; // masters.size()+1 offsets into member_cells
    std::vector<int32_t> member_cells; // members grouped by master, ascending per group
};

/// Walks from (i,j) toward the merge master: while the cell's corner average
/// is non-positive or its virtual area is below half a Cartesian cell, step
/// across the largest Cartesian edge (precedence Lx+, Lx-, Ly+, Ly- on ties;
/// steps leaving the domain are skipped). Budget nx+ny steps.
std::pair<int, int> find_master_cell(int i, int j, const std::vector<VirtualCellGeom>& geo,
                                     const LevelSetField& ls, const SpaceGrid& grid);

/// Masters for all non-solid cells plus per-master accumulated areas and the
/// member lists; runs serially in cell order for reproducibility. Verifies
/// the half-cell floor on every control volume that contains a cut cell.
ControlVolumeMap accumulate_control_volumes(const std::vector<VirtualCellGeom>& geo,
                                            const LevelSetField& ls, const SpaceGrid& grid);

}  // namespace kinecell
