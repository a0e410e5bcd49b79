#pragma once

#include <vector>

#include "kinecell/types.hpp"

namespace kinecell {

/// Signed distances follow the gas convention: positive in gas, negative in
/// solid.

/// Solid disc of radius R: gas outside.
inline double sdf_solid_disc(const Vec2& x, const Vec2& center, double R) {
    return (x - center).norm() - R;
}

/// Circular enclosure of radius R: gas inside.
inline double sdf_enclosure_disc(const Vec2& x, const Vec2& center, double R) {
    return R - (x - center).norm();
}

/// Exact distance to an axis-aligned solid rectangle given in its body frame
/// (centered at the origin, half extents h): positive outside.
inline double sdf_solid_rect(const Vec2& p, const Vec2& h) {
    const Vec2 q = p.cwiseAbs() - h;
    const Vec2 qpos = q.cwiseMax(0.0);
    return qpos.norm() + std::min(std::max(q.x(), q.y()), 0.0);
}

inline Vec2 rotate(const Vec2& p, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x() - s * p.y(), s * p.x() + c * p.y()};
}

// ---------------------------------------------------------------------------
// Roots lobe profile
// ---------------------------------------------------------------------------

/// Two-lobed rotor boundary in parametric form. `Printed` evaluates the
/// sin-based published formulas verbatim (the resulting curve has radial
/// slits at theta = 0 and pi); `Standard` is the classical epicycloid /
/// hypocycloid pair on the 4r pitch circle, which closes and meshes.
enum class LobeProfileKind { Printed, Standard };

/// Epicycloid branch on [-pi,-pi/2) u [0,pi/2), hypocycloid branch elsewhere.
Vec2 lobe_profile(double theta, double r, LobeProfileKind kind = LobeProfileKind::Printed);

/// Closed polygon sampled at n uniformly spaced parameter values.
std::vector<Vec2> sample_lobe_polygon(double r, int n, LobeProfileKind kind);

// ---------------------------------------------------------------------------
// Polygon utilities
// ---------------------------------------------------------------------------

/// Distance to the polygon boundary, negative inside (even-odd rule).
double polygon_signed_distance(const std::vector<Vec2>& poly, const Vec2& x);

/// No two non-adjacent edges intersect.
bool polygon_is_simple(const std::vector<Vec2>& poly);

}  // namespace kinecell
