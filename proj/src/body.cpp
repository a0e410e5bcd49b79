#include "kinecell/body.hpp"

#include <cmath>

namespace kinecell {

RootsBody::RootsBody(double lobe_r, double gap, double casing_clearance,
                     double channel_half_height, double domain_half_width, double T_wall,
                     LobeProfileKind profile, int segments)
    : lobe_r_(lobe_r),
      ecc_(4.0 * lobe_r + 0.5 * gap),
      r_house_(6.0 * lobe_r + casing_clearance),
      chan_h_(channel_half_height),
      half_w_(domain_half_width),
      T_wall_(T_wall),
      poly_(sample_lobe_polygon(lobe_r, segments, profile)),
      far_margin_(0.5 * lobe_r) {}

double RootsBody::lobe_gas_distance(const Vec2& x, const RigidBodyState& s, int which) const {
    const Vec2 c = lobe_center(which);
    const double rad = (x - c).norm();
    // Lobe radius lives in [2r, 6r]; outside the annulus (plus margin) a
    // radial bound is sign-correct and cheap.
    if (rad > 6.0 * lobe_r_ + far_margin_) return rad - 6.0 * lobe_r_;
    if (rad < 2.0 * lobe_r_ - far_margin_) return rad - 2.0 * lobe_r_;
    const Vec2 p = rotate(x - c, -lobe_angle(which, s));
    return polygon_signed_distance(poly_, p);
}

double RootsBody::casing_gas_distance(const Vec2& x) const {
    double d = sdf_enclosure_disc(x, lobe_center(0), r_house_);
    d = std::max(d, sdf_enclosure_disc(x, lobe_center(1), r_house_));
    // Inlet and outlet channels extend the cavity to the domain sides.
    const double cx = 0.5 * (half_w_ + ecc_);
    const Vec2 half(0.5 * (half_w_ - ecc_), chan_h_);
    d = std::max(d, -sdf_solid_rect(Vec2(x.x() + cx, x.y()), half));
    d = std::max(d, -sdf_solid_rect(Vec2(x.x() - cx, x.y()), half));
    return d;
}

double RootsBody::levelset(const Vec2& x, const RigidBodyState& s) const {
    double d = casing_gas_distance(x);
    d = std::min(d, lobe_gas_distance(x, s, 0));
    d = std::min(d, lobe_gas_distance(x, s, 1));
    return d;
}

Vec2 RootsBody::wall_velocity_at(const Vec2& x, const RigidBodyState& s) const {
    const double dc = casing_gas_distance(x);
    const double d0 = lobe_gas_distance(x, s, 0);
    const double d1 = lobe_gas_distance(x, s, 1);
    if (dc <= d0 && dc <= d1) return Vec2::Zero();
    const int which = d0 <= d1 ? 0 : 1;
    const double omega = which == 0 ? s.theta_dot : -s.theta_dot;
    return omega * perp_ccw(x - lobe_center(which));
}

bool RootsBody::wall_is_dynamic(const Vec2& x, const RigidBodyState& s) const {
    const double dc = casing_gas_distance(x);
    return std::min(lobe_gas_distance(x, s, 0), lobe_gas_distance(x, s, 1)) < dc;
}

}  // namespace kinecell
