#pragma once

#include <cstdint>

#include "knotflux/curves.hpp"

namespace knotflux {

struct LinkingResult {
    double raw_value = 0.0;
    std::int64_t rounded = 0;
    double residual = 0.0;
    /// True when residual < 1e-9; a looser result is returned, not rejected.
    bool integer_like = false;
};

/// Gauss linking number of two disjoint closed polygonal curves. Each segment
/// pair contributes the exact signed solid angle of the spherical
/// quadrilateral spanned by the endpoint difference directions, so the only
/// error is floating-point accumulation. Antisymmetric under orientation
/// reversal of either curve, symmetric under exchange.
///
/// Throws a geometric-degeneracy error naming the closest segment pair when
/// the curves touch (separation <= 1e-9 x combined bounding-box diagonal).
LinkingResult gauss_linking(const Component& c1, const Component& c2);

} // namespace knotflux
