#include "kinecell/scenario.hpp"

#include <cmath>

#include "kinecell/velocity_grid.hpp"

namespace kinecell {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kArgonR = 208.13;  // J/(kg K), Boltzmann constant over argon mass
}  // namespace

void ScenarioSpec::validate() const {
    gas.validate();
    bc.validate();
    body0.validate();
    if (!body) throw ConfigError("scenario has no body description");
    if (!(rho0 > 0.0) || !(T0 > 0.0)) throw ConfigError("initial state needs rho0 > 0 and T0 > 0");

    const VelocityGrid vg = symmetric_velocity_grid(v_half_span, nvel);
    if (!vg.contains(u0)) throw ConfigError("velocity grid does not contain the initial velocity");
    const double uw = body->max_boundary_speed(body0);
    // The diffuse wall emits around u_w; require one node of slack.
    if (uw + vg.dv.maxCoeff() > std::min(v_half_span.x(), v_half_span.y()))
        throw ConfigError("velocity grid does not contain the wall velocities");
}

ScenarioSpec plates_scenario(double Kn, int nx, int ny, int nvel) {
    if (!(Kn > 0.0)) throw ConfigError("plates scenario needs Kn > 0");
    const double D = 1.0;
    const double rho0 = 1.0, T0 = 1.0, R = 1.0;

    ScenarioSpec s;
    s.name = "plates";
    s.x_min = {0.0, 0.0};
    s.x_max = {4.0 * D, 2.0 * D};
    s.nx = nx;
    s.ny = ny;

    // Kn = [(2/sqrt(pi)) sqrt(2 R T0) / (rho0 R T0 / mu)] / D, solved for mu.
    const double mu = Kn * D * rho0 * R * T0 * kSqrtPi / (2.0 * std::sqrt(2.0 * R * T0));
    s.gas = make_bgk(R, RelaxationLaw::MuOverRhoRT0, mu, 0.5, T0, rho0);
    s.rho0 = rho0;
    s.T0 = T0;

    s.bc.side[static_cast<int>(Side::Left)] = PeriodicBC{};
    s.bc.side[static_cast<int>(Side::Right)] = PeriodicBC{};
    s.bc.side[static_cast<int>(Side::Bottom)] = SpecularYBC{};
    s.bc.side[static_cast<int>(Side::Top)] = DiffuseWallBC{T0, Vec2::Zero()};

    s.body = std::make_shared<PlateBody>(D, D / 10.0, 2.0 * T0, T0, 4.0 * D);
    s.body0.x_c = {2.0 * D, 0.0};
    s.body0.mass = rho0 * D * D / 2.0;
    s.body0.mode = MotionMode::FreeTranslationOnly;
    s.body0.translation_axis = {1.0, 0.0};

    // Hot face runs at 2 T0; leave headroom for the plate's drift speed.
    const double a = 0.5 * std::sqrt(R * T0) + 6.0 * std::sqrt(R * 2.0 * T0);
    s.v_half_span = {a, a};
    s.nvel = nvel;
    s.integrator = TimeIntegrator::Explicit;
    return s;
}

ScenarioSpec crookes2d_scenario(int n, int nvel) {
    const double T0 = 300.0, Th = 400.0, Tc = 350.0;
    const double R_enc = 0.20;
    const double L = 0.10, l = 0.01;

    ScenarioSpec s;
    s.name = "crookes2d";
    const double half = R_enc * 1.05;
    s.x_min = {-half, -half};
    s.x_max = {half, half};
    s.nx = n;
    s.ny = n;

    s.gas = make_shakhov(kArgonR, 2.0 / 3.0, RelaxationLaw::ViscosityPowerLaw, 1.678e-5, 0.68, T0,
                         8.582e-6);
    s.rho0 = 8.582e-6;
    s.T0 = T0;

    for (int k = 0; k < 4; ++k) s.bc.side[k] = NeumannCopyBC{};  // enclosure is interior solid

    s.body = std::make_shared<RadiometerBody>(R_enc, L, l, 0.25 * L, Th, Tc, T0);
    s.body0.inertia = 4.9e-9;
    s.body0.mode = MotionMode::FreeRotationOnly;

    const double a = 6.0 * std::sqrt(kArgonR * Th) + 50.0;
    s.v_half_span = {a, a};
    s.nvel = nvel;
    s.integrator = TimeIntegrator::Explicit;
    return s;
}

ScenarioSpec roots_blower_scenario(int n, int nvel) {
    const double T0 = 300.0, P0 = 1e5;
    const double r = 0.038, d = 0.016;

    ScenarioSpec s;
    s.name = "roots_blower";
    s.x_min = {-0.4, -0.4};
    s.x_max = {0.4, 0.4};
    s.nx = n;
    s.ny = n;

    s.gas = make_bgk(kArgonR, RelaxationLaw::ViscosityPowerLaw, 2.117e-5, 0.81, T0, P0 / (kArgonR * T0));
    s.rho0 = P0 / (kArgonR * T0);
    s.T0 = T0;
    s.P_ref = P0;

    s.bc.side[static_cast<int>(Side::Left)] = NeumannCopyBC{};
    s.bc.side[static_cast<int>(Side::Right)] = MaxwellianInflowBC{s.rho0, Vec2::Zero(), T0};
    s.bc.side[static_cast<int>(Side::Bottom)] = NeumannCopyBC{};
    s.bc.side[static_cast<int>(Side::Top)] = NeumannCopyBC{};

    s.body = std::make_shared<RootsBody>(r, d, 0.01, 0.10, 0.4, T0, LobeProfileKind::Standard, 512);
    s.body0.theta_dot = 200.0;
    s.body0.mode = MotionMode::Prescribed;

    const double a = 6.0 * std::sqrt(kArgonR * 1.3 * T0) + 200.0 * 6.0 * r + 50.0;
    s.v_half_span = {a, a};
    s.nvel = nvel;
    s.integrator = TimeIntegrator::SemiImplicit;

    const double dx = (s.x_max.x() - s.x_min.x()) / n;
    s.probes.push_back({"p_inlet", s.x_min.x(), s.x_min.x() + 4.0 * dx});
    s.probes.push_back({"p_outlet", s.x_max.x() - 4.0 * dx, s.x_max.x()});
    return s;
}

ScenarioSpec make_scenario(const std::string& name) {
    if (name == "plates") return plates_scenario(0.5);
    if (name == "crookes2d") return crookes2d_scenario();
    if (name == "roots_blower") return roots_blower_scenario();
    throw ConfigError("unknown scenario '" + name + "'");
}

std::vector<std::string> scenario_names() { return {"plates", "crookes2d", "roots_blower"}; }

}  // namespace kinecell
