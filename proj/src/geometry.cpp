#include "knotflux/geometry.hpp"

#include <cmath>

#include "knotflux/errors.hpp"

namespace knotflux {

Mat3 rotation_about_axis(const Vec3& axis, double angle) {
    const double len = norm(axis);
    if (!(len > 0.0)) throw InvalidParameterError("rotation axis must be nonzero");
    const Vec3 n = axis / len;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = (1.0 - c) * n[i] * n[j];
    r.m[0][0] += c;
    r.m[1][1] += c;
    r.m[2][2] += c;
    r.m[0][1] -= s * n.z;
    r.m[0][2] += s * n.y;
    r.m[1][0] += s * n.z;
    r.m[1][2] -= s * n.x;
    r.m[2][0] -= s * n.y;
    r.m[2][1] += s * n.x;
    return r;
}

std::pair<Vec3, Vec3> orthonormal_frame(const Vec3& unit_axis) {
    const double ax = std::fabs(unit_axis.x);
    const double ay = std::fabs(unit_axis.y);
    const double az = std::fabs(unit_axis.z);
    Vec3 ref{1.0, 0.0, 0.0};
    if (ay < ax || az < ax) ref = (ay <= az) ? Vec3{0.0, 1.0, 0.0} : Vec3{0.0, 0.0, 1.0};
    const Vec3 v = normalized(cross(unit_axis, ref));
    const Vec3 u = cross(v, unit_axis);
    return {u, v};
}

double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
    const Vec3 d1 = q1 - p1;
    const Vec3 d2 = q2 - p2;
    const Vec3 r = p1 - p2;
    const double a = norm2(d1);
    const double e = norm2(d2);
    const double f = dot(d2, r);

    double s = 0.0;
    double t = 0.0;
    constexpr double kEps = 1e-30;
    if (a <= kEps && e <= kEps) {
        return norm(r);
    }
    if (a <= kEps) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e <= kEps) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            if (denom > 0.0) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return norm((p1 + s * d1) - (p2 + t * d2));
}

} // namespace knotflux
