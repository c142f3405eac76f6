#include "knotflux/linking.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "knotflux/errors.hpp"

namespace knotflux {

namespace {

/// Signed solid angle of the geodesic triangle (a, b, c) on the unit sphere.
/// A zero triple product means the vertices lie on a great circle through
/// which the triangle degenerates to zero area; returning 0 there avoids the
/// atan2 branch cut at the antipode.
double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
    const double det = triple(a, b, c);
    if (det == 0.0) return 0.0;
    const double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    return 2.0 * std::atan2(det, den);
}

} // namespace

LinkingResult gauss_linking(const Component& c1, const Component& c2) {
    c1.validate();
    c2.validate();

    Aabb box = c1.bounding_box();
    box.expand(c2.bounding_box());
    const double scale = box.diagonal();

    const CurvePairDistance closest = min_distance(c1, c2);
    if (closest.distance <= 1e-9 * scale) {
        std::ostringstream msg;
        msg << "curves touch or intersect: segment " << closest.segment_a
            << " of the first curve and segment " << closest.segment_b
            << " of the second are " << closest.distance << " apart";
        throw DegeneracyError(msg.str());
    }

    double total = 0.0;
    for (std::size_t i = 0; i < c1.size(); ++i) {
        const Vec3 A = c1.edge_start(i);
        const Vec3 B = c1.edge_end(i);
        for (std::size_t j = 0; j < c2.size(); ++j) {
            const Vec3 C = c2.edge_start(j);
            const Vec3 D = c2.edge_end(j);
            const Vec3 v1 = normalized(C - A);
            const Vec3 v2 = normalized(D - A);
            const Vec3 v3 = normalized(D - B);
            const Vec3 v4 = normalized(C - B);
            total += triangle_solid_angle(v1, v2, v3) + triangle_solid_angle(v1, v3, v4);
        }
    }

    LinkingResult r;
    r.raw_value = total / (4.0 * std::numbers::pi);
    r.rounded = std::llround(r.raw_value);
    r.residual = std::fabs(r.raw_value - static_cast<double>(r.rounded));
    r.integer_like = r.residual < 1e-9;
    return r;
}

} // namespace knotflux
