#pragma once

#include <variant>

#include "kinecell/types.hpp"

namespace kinecell {

enum class Side : int { Left = 0, Right = 1, Bottom = 2, Top = 3 };

struct PeriodicBC {};
struct SpecularYBC {};  // mirror in v_y; valid on bottom/top only
struct NeumannCopyBC {};
struct DiffuseWallBC {
    double T_w = 1.0;
    Vec2 u_w = Vec2::Zero();
};
struct MaxwellianInflowBC {
    double rho0 = 1.0;
    Vec2 u0 = Vec2::Zero();
    double T0 = 1.0;
};

using SideBC = std::variant<PeriodicBC, SpecularYBC, NeumannCopyBC, DiffuseWallBC,
                            MaxwellianInflowBC>;

struct DomainBC {
    SideBC side[4];  // indexed by Side

    const SideBC& at(Side s) const { return side[static_cast<int>(s)]; }

    void validate() const {
        const bool pl = std::holds_alternative<PeriodicBC>(side[0]);
        const bool pr = std::holds_alternative<PeriodicBC>(side[1]);
        const bool pb = std::holds_alternative<PeriodicBC>(side[2]);
        const bool pt = std::holds_alternative<PeriodicBC>(side[3]);
        if (pl != pr || pb != pt)
            throw ConfigError("periodic boundaries must come in matched left/right or bottom/top pairs");
        if (std::holds_alternative<SpecularYBC>(side[0]) ||
            std::holds_alternative<SpecularYBC>(side[1]))
            throw ConfigError("specular reflection mirrors v_y and applies to bottom/top only");
    }
};

}  // namespace kinecell
