#include "kinecell/level_set.hpp"

#include <cmath>

namespace kinecell {

LevelSetField sample_levelset(const SignedDistanceFn& sdf, const SpaceGrid& grid) {
    LevelSetField ls;
    ls.clamp = 1e-10 * grid.dx;
    ls.phi.resize(static_cast<size_t>(grid.nx + 1) * (grid.ny + 1));
#pragma omp parallel for schedule(static)
    for (int j = 0; j <= grid.ny; ++j) {
        for (int i = 0; i <= grid.nx; ++i) {
            const double v = sdf(grid.node(i, j));
            // Ties (v == 0) land on the gas side.
            const double s = v < 0.0 ? -1.0 : 1.0;
            ls.phi[static_cast<size_t>(grid.node_index(i, j))] =
                s * std::max(std::abs(v), ls.clamp);
        }
    }
    return ls;
}

}  // namespace kinecell
