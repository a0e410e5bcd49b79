#include "kinecell/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kinecell {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool on_epicycloid_arc(double theta) {
    return (theta >= 0.0 && theta < 0.5 * kPi) || (theta >= -kPi && theta < -0.5 * kPi);
}
}  // namespace

Vec2 lobe_profile(double theta, double r, LobeProfileKind kind) {
    if (on_epicycloid_arc(theta)) {
        if (kind == LobeProfileKind::Printed)
            return {5.0 * r * std::cos(theta) - r * std::sin(5.0 * theta),
                    5.0 * r * std::sin(theta) - r * std::sin(5.0 * theta)};
        return {5.0 * r * std::cos(theta) - r * std::cos(5.0 * theta),
                5.0 * r * std::sin(theta) - r * std::sin(5.0 * theta)};
    }
    if (kind == LobeProfileKind::Printed)
        return {3.0 * r * std::cos(theta) + r * std::sin(3.0 * theta),
                3.0 * r * std::sin(theta) - r * std::sin(3.0 * theta)};
    return {3.0 * r * std::cos(theta) + r * std::cos(3.0 * theta),
            3.0 * r * std::sin(theta) - r * std::sin(3.0 * theta)};
}

std::vector<Vec2> sample_lobe_polygon(double r, int n, LobeProfileKind kind) {
    std::vector<Vec2> poly;
    poly.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double theta = -kPi + 2.0 * kPi * k / n;
        poly.push_back(lobe_profile(theta, r, kind));
    }
    return poly;
}

double polygon_signed_distance(const std::vector<Vec2>& poly, const Vec2& x) {
    const size_t n = poly.size();
    double d2 = std::numeric_limits<double>::infinity();
    bool inside = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[j];
        const Vec2& b = poly[i];
        const Vec2 ab = b - a;
        const double t = std::clamp(ab.dot(x - a) / ab.squaredNorm(), 0.0, 1.0);
        d2 = std::min(d2, (x - (a + t * ab)).squaredNorm());
        if ((b.y() > x.y()) != (a.y() > x.y())) {
            const double xi = b.x() + (x.y() - b.y()) * (a.x() - b.x()) / (a.y() - b.y());
            if (x.x() < xi) inside = !inside;
        }
    }
    const double d = std::sqrt(d2);
    return inside ? -d : d;
}

namespace {
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        const double v = (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
        return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    };
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4;
}
}  // namespace

bool polygon_is_simple(const std::vector<Vec2>& poly) {
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(a, b, poly[j], poly[(j + 1) % n])) return false;
        }
    }
    return true;
}

}  // namespace kinecell
