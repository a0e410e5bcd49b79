#pragma once

#include <span>

#include "kinecell/gas_model.hpp"
#include "kinecell/moments.hpp"
#include "kinecell/types.hpp"
#include "kinecell/velocity_grid.hpp"

namespace kinecell {

/// Reduced Maxwellian rho/(2 pi R T) exp(-|v-u|^2 / (2 R T)) sampled on the
/// grid nodes. Throws ConfigError on non-positive rho or T.
void reduced_maxwellian(double rho, const Vec2& u, double T, double R, const VelocityGrid& grid,
                        std::span<double> out);

/// Relaxation target pair for the configured collision model. BGK yields the
/// Maxwellian pair (feq, (RT/2) feq); Shakhov applies the heat-flux corrected
/// brackets, which degenerate to BGK when q = 0 or Pr = 1.
void equilibrium_pair(const MacroFields& macro, const GasModel& model, const VelocityGrid& grid,
                      std::span<double> feq, std::span<double> geq);

struct EqParams {
    double rho = 0.0;
    Vec2 u = Vec2::Zero();
    double T = 0.0;
    int iterations = 0;
};

/// Parameters (rho*, u*, T*) such that the discrete Maxwellian pair built from
/// them reproduces the discrete (rho, rho u, E) of the input rows to 1e-12
/// relative. Newton on the four moment equations, analytic Jacobian, naive
/// moments as the seed, at most 50 iterations; non-convergence raises
/// SolverError carrying the residual.
EqParams conservative_equilibrium_params(std::span<const double> f_row,
                                         std::span<const double> g_row, const VelocityGrid& grid,
                                         double R);

/// Conservative relaxation target for the full collision model: the returned
/// rows' discrete conserved moments match the input's. Under BGK this is the
/// Maxwellian pair at conservative_equilibrium_params; under Shakhov the
/// Newton residual is evaluated on the corrected pair (heat flux frozen at the
/// input value) so the collision term conserves exactly.
EqParams conservative_equilibrium_pair(std::span<const double> f_row,
                                       std::span<const double> g_row, const VelocityGrid& grid,
                                       const GasModel& model, std::span<double> feq,
                                       std::span<double> geq);

/// Local relaxation time per GasModel::law.
double relaxation_time(const MacroFields& macro, const GasModel& model);

}  // namespace kinecell
