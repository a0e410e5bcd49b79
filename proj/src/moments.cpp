#include "kinecell/moments.hpp"

namespace kinecell {

ConservedMoments conserved_moments(std::span<const double> f_row, std::span<const double> g_row,
                                   const VelocityGrid& grid) {
    const int np = grid.count();
    double m0 = 0.0, m1x = 0.0, m1y = 0.0, m2 = 0.0;
    for (int p = 0; p < np; ++p) {
        const double f = f_row[static_cast<size_t>(p)];
        const double vx = grid.vx[static_cast<size_t>(p)];
        const double vy = grid.vy[static_cast<size_t>(p)];
        m0 += f;
        m1x += vx * f;
        m1y += vy * f;
        m2 += 0.5 * (vx * vx + vy * vy) * f + g_row[static_cast<size_t>(p)];
    }
    const double w = grid.weight();
    return {m0 * w, Vec2(m1x * w, m1y * w), m2 * w};
}

double temperature_from_energy(const ConservedMoments& m, double R) {
    const Vec2 u = m.momentum / m.rho;
    return (m.E - 0.5 * m.rho * u.squaredNorm()) * 2.0 / (3.0 * m.rho * R);
}

MacroFields compute_moments(std::span<const double> f_row, std::span<const double> g_row,
                            const VelocityGrid& grid, double R) {
    const ConservedMoments cm = conserved_moments(f_row, g_row, grid);
    if (!(cm.rho > 0.0))
        throw DegenerateStateError("non-positive density; temperature undefined");

    MacroFields out;
    out.rho = cm.rho;
    out.u = cm.momentum / cm.rho;
    out.E = cm.E;
    out.T = temperature_from_energy(cm, R);
    if (!(out.T > 0.0)) throw DegenerateStateError("non-positive temperature");
    out.P = cm.rho * R * out.T;

    const int np = grid.count();
    double sxx = 0.0, sxy = 0.0, syy = 0.0, qx = 0.0, qy = 0.0;
    for (int p = 0; p < np; ++p) {
        const double f = f_row[static_cast<size_t>(p)];
        const double cx = grid.vx[static_cast<size_t>(p)] - out.u.x();
        const double cy = grid.vy[static_cast<size_t>(p)] - out.u.y();
        sxx += cx * cx * f;
        sxy += cx * cy * f;
        syy += cy * cy * f;
        const double e = 0.5 * (cx * cx + cy * cy) * f + g_row[static_cast<size_t>(p)];
        qx += cx * e;
        qy += cy * e;
    }
    const double w = grid.weight();
    out.sigma << sxx * w, sxy * w, sxy * w, syy * w;
    out.q = Vec2(qx * w, qy * w);
    return out;
}

}  // namespace kinecell
