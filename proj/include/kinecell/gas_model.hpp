#pragma once

#include "kinecell/types.hpp"

namespace kinecell {

enum class CollisionKind { BGK, Shakhov };

/// How the local relaxation time is obtained from the macroscopic state.
///   MuOverRhoRT0:      tau = mu / (rho * R * T0)
///   ViscosityPowerLaw: tau = (mu / P) * (T / T0)^omega
enum class RelaxationLaw { MuOverRhoRT0, ViscosityPowerLaw };

struct GasModel {
    double R = 1.0;    // gas constant (Boltzmann constant over molecular mass)
    double Pr = 1.0;   // forced to 1 under BGK
    CollisionKind collision = CollisionKind::BGK;
    RelaxationLaw law = RelaxationLaw::MuOverRhoRT0;
    double mu_ref = 1.0;
    double omega = 0.5;
    double T0 = 1.0;
    double rho0 = 1.0;

    void validate() const {
        if (!(R > 0.0)) throw ConfigError("gas constant must be positive");
        if (!(mu_ref > 0.0)) throw ConfigError("reference viscosity must be positive");
        if (!(T0 > 0.0)) throw ConfigError("reference temperature must be positive");
        if (collision == CollisionKind::BGK && Pr != 1.0)
            throw ConfigError("BGK fixes the Prandtl number to 1");
        if (collision == CollisionKind::Shakhov && !(Pr > 0.0))
            throw ConfigError("Shakhov needs a positive Prandtl number");
    }
};

inline GasModel make_bgk(double R, RelaxationLaw law, double mu_ref, double omega, double T0,
                         double rho0) {
    GasModel m{R, 1.0, CollisionKind::BGK, law, mu_ref, omega, T0, rho0};
    m.validate();
    return m;
}

inline GasModel make_shakhov(double R, double Pr, RelaxationLaw law, double mu_ref, double omega,
                             double T0, double rho0) {
    GasModel m{R, Pr, CollisionKind::Shakhov, law, mu_ref, omega, T0, rho0};
    m.validate();
    return m;
}

}  // namespace kinecell
