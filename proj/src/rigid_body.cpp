#include "kinecell/rigid_body.hpp"

namespace kinecell {

Mat2 wall_stress(std::span<const double> f_row, std::span<const double> fw_row,
                 const VelocityGrid& grid, const Vec2& u_w, const Vec2& n_w) {
    const int np = grid.count();
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int p = 0; p < np; ++p) {
        const double cx = grid.vx[static_cast<size_t>(p)] - u_w.x();
        const double cy = grid.vy[static_cast<size_t>(p)] - u_w.y();
        const double vn = cx * n_w.x() + cy * n_w.y();
        double f;
        if (vn < 0.0)
            f = fw_row[static_cast<size_t>(p)];
        else if (vn > 0.0)
            f = f_row[static_cast<size_t>(p)];
        else
            continue;
        sxx += cx * cx * f;
        sxy += cx * cy * f;
        syy += cy * cy * f;
    }
    const double w = grid.weight();
    Mat2 s;
    s << sxx * w, sxy * w, sxy * w, syy * w;
    return s;
}

WallLoad force_and_torque(std::span<const WallPatch> patches, const Vec2& x_c) {
    WallLoad out;
    for (const WallPatch& p : patches) {
        const Vec2 t = p.stress * p.n_w * p.Lw;
        out.force += t;
        out.torque += cross2(p.x_w - x_c, t);
    }
    return out;
}

RigidBodyState advance_body(const RigidBodyState& body, const Vec2& force, double torque,
                            double dt) {
    RigidBodyState out = body;
    out.x_c += dt * body.u_c;
    out.theta += dt * body.theta_dot;
    switch (body.mode) {
        case MotionMode::Free:
            out.u_c += dt * force / body.mass;
            out.theta_dot += dt * torque / body.inertia;
            break;
        case MotionMode::FreeTranslationOnly:
            out.u_c += dt * force.dot(body.translation_axis) / body.mass * body.translation_axis;
            break;
        case MotionMode::FreeRotationOnly:
            out.theta_dot += dt * torque / body.inertia;
            break;
        case MotionMode::Prescribed:
            break;
    }
    return out;
}

Vec2 wall_velocity(const RigidBodyState& body, const Vec2& r) {
    return body.u_c + body.theta_dot * perp_ccw(r - body.x_c);
}

}  // namespace kinecell
