#pragma once

#include <memory>
#include <vector>

#include "kinecell/rigid_body.hpp"
#include "kinecell/shapes.hpp"
#include "kinecell/types.hpp"

namespace kinecell {

/// Scenario-side description of everything solid in the domain: geometry as a
/// pose-dependent level set, plus wall velocity / temperature / ownership at
/// boundary points. Composite bodies (rotor assemblies, lobes plus casing)
/// resolve queries per nearest feature.
class Body {
  public:
    virtual ~Body() = default;

    /// Gas-positive signed distance (or sign-correct distance bound).
    virtual double levelset(const Vec2& x, const RigidBodyState& s) const = 0;

    virtual Vec2 wall_velocity_at(const Vec2& x, const RigidBodyState& s) const {
        return wall_velocity(s, x);
    }

    virtual double wall_temperature(const Vec2& x, const RigidBodyState& s) const = 0;

    /// Whether the wall feature at x belongs to the degrees of freedom (its
    /// stress feeds force/torque). Static casings return false.
    virtual bool wall_is_dynamic(const Vec2&, const RigidBodyState&) const { return true; }

    /// Upper bound on |u_w| over the whole boundary, for grid checks.
    virtual double max_boundary_speed(const RigidBodyState& s) const = 0;
};

/// Nothing solid anywhere; for periodic-box tests.
class EmptyBody final : public Body {
  public:
    double levelset(const Vec2&, const RigidBodyState&) const override { return 1e30; }
    double wall_temperature(const Vec2&, const RigidBodyState&) const override { return 1.0; }
    double max_boundary_speed(const RigidBodyState&) const override { return 0.0; }
};

/// Solid disc with a uniform wall temperature.
class DiscBody final : public Body {
  public:
    DiscBody(double radius, double T_w) : radius_(radius), T_w_(T_w) {}
    double levelset(const Vec2& x, const RigidBodyState& s) const override {
        return sdf_solid_disc(x, s.x_c, radius_);
    }
    double wall_temperature(const Vec2&, const RigidBodyState&) const override { return T_w_; }
    double max_boundary_speed(const RigidBodyState& s) const override {
        return s.u_c.norm() + std::abs(s.theta_dot) * radius_;
    }

  private:
    double radius_;
    double T_w_;
};

/// Two-faced plate in a channel, periodic in x. The rectangle is centered at
/// the body position; the +x face runs hot. The level set wraps over the
/// channel period so the plate re-enters when it drifts out.
class PlateBody final : public Body {
  public:
    PlateBody(double height, double thickness, double T_hot, double T_cold, double period)
        : half_(0.5 * thickness, 0.5 * height), T_hot_(T_hot), T_cold_(T_cold), period_(period) {}

    double levelset(const Vec2& x, const RigidBodyState& s) const override {
        return sdf_solid_rect(local(x, s), half_);
    }
    double wall_temperature(const Vec2& x, const RigidBodyState& s) const override {
        return local(x, s).x() >= 0.0 ? T_hot_ : T_cold_;
    }
    double max_boundary_speed(const RigidBodyState& s) const override {
        return s.u_c.norm() + std::abs(s.theta_dot) * half_.norm();
    }

  private:
    Vec2 local(const Vec2& x, const RigidBodyState& s) const {
        return {std::remainder(x.x() - s.x_c.x(), period_), x.y() - s.x_c.y()};
    }
    Vec2 half_;
    double T_hot_, T_cold_;
    double period_;
};

/// Four-vane rotor inside a static circular enclosure. Vane k lies along the
/// rotated radial direction theta + k pi/2; the face whose outward normal
/// leads the rotation (+y in the vane frame) runs hot.
class RadiometerBody final : public Body {
  public:
    RadiometerBody(double enclosure_radius, double vane_length, double vane_thickness,
                   double inner_radius, double T_hot, double T_cold, double T_enclosure)
        : r_enc_(enclosure_radius),
          half_(0.5 * vane_length, 0.5 * vane_thickness),
          r_mid_(inner_radius + 0.5 * vane_length),
          T_hot_(T_hot),
          T_cold_(T_cold),
          T_enc_(T_enclosure) {}

    double levelset(const Vec2& x, const RigidBodyState& s) const override {
        return std::min(sdf_enclosure_disc(x, Vec2::Zero(), r_enc_), vane_distance(x, s).first);
    }
    Vec2 wall_velocity_at(const Vec2& x, const RigidBodyState& s) const override {
        if (!vane_owns(x, s)) return Vec2::Zero();
        return wall_velocity(s, x);
    }
    double wall_temperature(const Vec2& x, const RigidBodyState& s) const override {
        if (!vane_owns(x, s)) return T_enc_;
        const auto [d, k] = vane_distance(x, s);
        (void)d;
        const Vec2 p = vane_local(x, s, k);
        return p.y() >= 0.0 ? T_hot_ : T_cold_;
    }
    bool wall_is_dynamic(const Vec2& x, const RigidBodyState& s) const override {
        return vane_owns(x, s);
    }
    double max_boundary_speed(const RigidBodyState& s) const override {
        return std::abs(s.theta_dot) * (r_mid_ + half_.x());
    }

  private:
    Vec2 vane_local(const Vec2& x, const RigidBodyState& s, int k) const {
        constexpr double kHalfPi = 1.5707963267948966;
        const Vec2 p = rotate(x - s.x_c, -(s.theta + k * kHalfPi));
        return {p.x() - r_mid_, p.y()};
    }
    std::pair<double, int> vane_distance(const Vec2& x, const RigidBodyState& s) const {
        double best = 1e30;
        int arg = 0;
        for (int k = 0; k < 4; ++k) {
            const double d = sdf_solid_rect(vane_local(x, s, k), half_);
            if (d < best) {
                best = d;
                arg = k;
            }
        }
        return {best, arg};
    }
    bool vane_owns(const Vec2& x, const RigidBodyState& s) const {
        return vane_distance(x, s).first < sdf_enclosure_disc(x, Vec2::Zero(), r_enc_);
    }

    double r_enc_;
    Vec2 half_;
    double r_mid_;
    double T_hot_, T_cold_, T_enc_;
};

/// Two counter-rotating lobes in a static casing (two discs joined to inlet
/// and outlet channels). The single angular DOF theta drives the left lobe at
/// +theta and the right one at -theta, 90 degrees out of phase, so the rotors
/// mesh with clearance d.
class RootsBody final : public Body {
  public:
    RootsBody(double lobe_r, double gap, double casing_clearance, double channel_half_height,
              double domain_half_width, double T_wall, LobeProfileKind profile, int segments);

    double levelset(const Vec2& x, const RigidBodyState& s) const override;
    Vec2 wall_velocity_at(const Vec2& x, const RigidBodyState& s) const override;
    double wall_temperature(const Vec2&, const RigidBodyState&) const override { return T_wall_; }
    bool wall_is_dynamic(const Vec2& x, const RigidBodyState& s) const override;
    double max_boundary_speed(const RigidBodyState& s) const override {
        return std::abs(s.theta_dot) * 6.0 * lobe_r_;
    }

    Vec2 lobe_center(int which) const { return {which == 0 ? -ecc_ : ecc_, 0.0}; }
    double lobe_angle(int which, const RigidBodyState& s) const {
        constexpr double kQuarterPi = 0.78539816339744831;
        return which == 0 ? -kQuarterPi + s.theta : kQuarterPi - s.theta;
    }
    /// Gas-positive distance to lobe `which` (exact near the surface, a
    /// sign-correct radial bound far from it).
    double lobe_gas_distance(const Vec2& x, const RigidBodyState& s, int which) const;

  private:
    double casing_gas_distance(const Vec2& x) const;

    double lobe_r_;
    double ecc_;     // lobe center offset: 4r + gap/2
    double r_house_; // casing disc radius
    double chan_h_;
    double half_w_;
    double T_wall_;
    std::vector<Vec2> poly_;
    double far_margin_;
};

}  // namespace kinecell
