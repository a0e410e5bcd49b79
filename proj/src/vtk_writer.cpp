#include "kinecell/vtk_writer.hpp"

#include <cstdio>
#include <fstream>
#include <vector>

namespace kinecell {

namespace {
void write_scalar_array(std::ofstream& out, const std::vector<double>& v) {
    char buf[32];
    for (size_t k = 0; k < v.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", v[k]);
        out << buf << ((k + 1) % 6 == 0 ? '\n' : ' ');
    }
    if (v.size() % 6 != 0) out << '\n';
}
}  // namespace

void write_fields(const Solver& solver, const std::string& path) {
    const SpaceGrid& g = solver.space_grid();
    const int nc = g.cell_count();

    std::vector<double> rho(static_cast<size_t>(nc)), ux(static_cast<size_t>(nc)),
        uy(static_cast<size_t>(nc)), T(static_cast<size_t>(nc)), P(static_cast<size_t>(nc));
    std::vector<int> ctype(static_cast<size_t>(nc));
    for (int c = 0; c < nc; ++c) {
        const MacroFields m = solver.cell_macro(c);
        rho[static_cast<size_t>(c)] = m.rho;
        ux[static_cast<size_t>(c)] = m.u.x();
        uy[static_cast<size_t>(c)] = m.u.y();
        T[static_cast<size_t>(c)] = m.T;
        P[static_cast<size_t>(c)] = m.P;
        ctype[static_cast<size_t>(c)] = static_cast<int>(solver.cell_type(c));
    }

    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "# vtk DataFile Version 3.0\n";
    out << "kinecell fields\n";
    out << "ASCII\n";
    out << "DATASET STRUCTURED_POINTS\n";
    out << "DIMENSIONS " << g.nx << ' ' << g.ny << " 1\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "ORIGIN %.17g %.17g 0\n", g.x_min.x() + 0.5 * g.dx,
                  g.x_min.y() + 0.5 * g.dy);
    out << buf;
    std::snprintf(buf, sizeof buf, "SPACING %.17g %.17g 1\n", g.dx, g.dy);
    out << buf;
    out << "POINT_DATA " << nc << '\n';

    out << "SCALARS rho double 1\nLOOKUP_TABLE default\n";
    write_scalar_array(out, rho);
    out << "VECTORS u double\n";
    for (int c = 0; c < nc; ++c) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", ux[static_cast<size_t>(c)],
                      uy[static_cast<size_t>(c)]);
        out << buf;
    }
    out << "SCALARS T double 1\nLOOKUP_TABLE default\n";
    write_scalar_array(out, T);
    out << "SCALARS P double 1\nLOOKUP_TABLE default\n";
    write_scalar_array(out, P);
    out << "SCALARS cell_type int 1\nLOOKUP_TABLE default\n";
    for (int c = 0; c < nc; ++c) out << ctype[static_cast<size_t>(c)] << ((c + 1) % 12 == 0 ? '\n' : ' ');
    if (nc % 12 != 0) out << '\n';

    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace kinecell
