#pragma once

#include <span>

#include "kinecell/types.hpp"
#include "kinecell/velocity_grid.hpp"

namespace kinecell {

/// Which degrees of freedom Newton's laws drive. Prescribed bodies keep their
/// configured velocities and never read force or torque.
enum class MotionMode { Free, FreeRotationOnly, FreeTranslationOnly, Prescribed };

struct RigidBodyState {
    Vec2 x_c = Vec2::Zero();
    double theta = 0.0;
    Vec2 u_c = Vec2::Zero();
    double theta_dot = 0.0;
    double mass = 1.0;
    double inertia = 1.0;
    MotionMode mode = MotionMode::Prescribed;
    Vec2 translation_axis = Vec2(1.0, 0.0);  // used by FreeTranslationOnly

    void validate() const {
        const bool translates = mode == MotionMode::Free || mode == MotionMode::FreeTranslationOnly;
        const bool rotates = mode == MotionMode::Free || mode == MotionMode::FreeRotationOnly;
        if (translates && !(mass > 0.0)) throw ConfigError("free translation needs positive mass");
        if (rotates && !(inertia > 0.0)) throw ConfigError("free rotation needs positive inertia");
    }
};

/// Boundary stress tensor at one wall point: wall-emitted part over incoming
/// velocities plus the gas part over outgoing ones, both relative to u_w.
Mat2 wall_stress(std::span<const double> f_row, std::span<const double> fw_row,
                 const VelocityGrid& grid, const Vec2& u_w, const Vec2& n_w);

/// One wall segment carrying a boundary stress.
struct WallPatch {
    Mat2 stress = Mat2::Zero();
    Vec2 n_w = Vec2::Zero();
    Vec2 x_w = Vec2::Zero();
    double Lw = 0.0;
};

struct WallLoad {
    Vec2 force = Vec2::Zero();
    double torque = 0.0;
};

/// F = sum stress n_w Lw and T = sum (x_w - x_c) x (stress n_w) Lw, summed in
/// the given (deterministic) patch order.
WallLoad force_and_torque(std::span<const WallPatch> patches, const Vec2& x_c);

/// One step of the discrete Newton laws: positions advance with the current
/// velocities first, then velocities with the current loads (skipped or
/// projected per MotionMode).
RigidBodyState advance_body(const RigidBodyState& body, const Vec2& force, double torque,
                            double dt);

/// Velocity of the boundary point r: u_c + theta_dot * (r - x_c) rotated 90
/// degrees counter-clockwise.
Vec2 wall_velocity(const RigidBodyState& body, const Vec2& r);

inline Vec2 perp_ccw(const Vec2& a) { return {-a.y(), a.x()}; }
inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace kinecell
