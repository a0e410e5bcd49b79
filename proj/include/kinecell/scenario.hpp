#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kinecell/body.hpp"
#include "kinecell/boundary.hpp"
#include "kinecell/gas_model.hpp"
#include "kinecell/rigid_body.hpp"
#include "kinecell/space_grid.hpp"
#include "kinecell/types.hpp"

namespace kinecell {

enum class TimeIntegrator { Explicit, SemiImplicit };
enum class CflMode { Strict, Relaxed };

/// Area-weighted mean pressure over non-solid cells whose center lies in the
/// x-strip, divided by P_ref.
struct PressureProbe {
    std::string name;
    double x_lo = 0.0;
    double x_hi = 0.0;
};

/// Pure data: everything needed to set up a run. Construction performs no
/// simulation.
struct ScenarioSpec {
    std::string name;

    Vec2 x_min = Vec2::Zero();
    Vec2 x_max = Vec2::Ones();
    int nx = 1, ny = 1;

    DomainBC bc;
    GasModel gas;

    double rho0 = 1.0;
    double T0 = 1.0;
    Vec2 u0 = Vec2::Zero();

    std::shared_ptr<const Body> body;
    RigidBodyState body0;

    Vec2 v_half_span = Vec2::Ones();  // nodes span [-a, a] per axis
    int nvel = 16;

    TimeIntegrator integrator = TimeIntegrator::Explicit;
    CflMode cfl_mode = CflMode::Relaxed;
    double cfl_c = 0.5;

    double P_ref = 0.0;  // 0 means rho0 * R * T0
    std::vector<PressureProbe> probes;

    double pressure_ref() const { return P_ref > 0.0 ? P_ref : rho0 * gas.R * T0; }

    /// Grid containment of all wall velocities plus structural checks.
    void validate() const;
};

/// Thin plate under radiometric force in a periodic half-channel (the hot
/// +x face at twice the base temperature), free to translate along x.
ScenarioSpec plates_scenario(double Kn, int nx = 400, int ny = 200, int nvel = 24);

/// Four-vane rotor in a circular enclosure, Shakhov argon, free rotation.
ScenarioSpec crookes2d_scenario(int n = 400, int nvel = 30);

/// Two counter-rotating lobes at +-200 rad/s pumping argon left to right.
ScenarioSpec roots_blower_scenario(int n = 100, int nvel = 16);

ScenarioSpec make_scenario(const std::string& name);
std::vector<std::string> scenario_names();

}  // namespace kinecell
