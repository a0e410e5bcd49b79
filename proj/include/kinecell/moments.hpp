#pragma once

#include <span>

#include "kinecell/gas_model.hpp"
#include "kinecell/types.hpp"
#include "kinecell/velocity_grid.hpp"

namespace kinecell {

/// Macroscopic state of one cell.
struct MacroFields {
    double rho = 0.0;
    Vec2 u = Vec2::Zero();
    double E = 0.0;  // total energy density: E = rho|u|^2/2 + (3/2) rho R T
    double T = 0.0;
    double P = 0.0;  // P = rho R T
    Mat2 sigma = Mat2::Zero();
    Vec2 q = Vec2::Zero();
};

/// Conserved moments (rho, rho*u, E) of a reduced pair, summed in fixed
/// p-ascending order so results are bit-reproducible.
struct ConservedMoments {
    double rho = 0.0;
    Vec2 momentum = Vec2::Zero();
    double E = 0.0;
};

ConservedMoments conserved_moments(std::span<const double> f_row, std::span<const double> g_row,
                                   const VelocityGrid& grid);

/// Full moment set including stress and heat flux; T and P derived from the
/// energy relation. Throws DegenerateStateError when rho <= 0 or T <= 0.
MacroFields compute_moments(std::span<const double> f_row, std::span<const double> g_row,
                            const VelocityGrid& grid, double R);

/// Temperature from conserved moments: E = rho|u|^2/2 + (3/2) rho R T.
double temperature_from_energy(const ConservedMoments& m, double R);

}  // namespace kinecell
