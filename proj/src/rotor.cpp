#include "knotflux/rotor.hpp"

#include <algorithm>
#include <tuple>

#include "knotflux/errors.hpp"

namespace knotflux {

const char* top_kind_name(TopKind kind) {
    switch (kind) {
        case TopKind::spherical: return "spherical";
        case TopKind::prolate_symmetric: return "prolate-symmetric";
        case TopKind::oblate_symmetric: return "oblate-symmetric";
        case TopKind::asymmetric: return "asymmetric";
    }
    return "unknown";
}

TopClassification classify_top(const std::array<double, 3>& moments, double tol, double hbar) {
    for (double m : moments)
        if (!(m > 0.0)) throw InvalidParameterError("principal moments must be positive");
    if (tol < 0.0) throw InvalidParameterError("tolerance must be nonnegative");

    TopClassification cls;
    cls.moments = moments;
    std::sort(cls.moments.begin(), cls.moments.end());
    const double i1 = cls.moments[0];
    const double i2 = cls.moments[1];
    const double i3 = cls.moments[2];

    const bool low_pair = (i2 - i1) <= tol * i3;
    const bool high_pair = (i3 - i2) <= tol * i3;
    if (low_pair && high_pair)
        cls.kind = TopKind::spherical;
    else if (high_pair)
        cls.kind = TopKind::prolate_symmetric;
    else if (low_pair)
        cls.kind = TopKind::oblate_symmetric;
    else
        cls.kind = TopKind::asymmetric;

    const double h2 = hbar * hbar;
    cls.A = h2 / (2.0 * i1);
    cls.B = h2 / (2.0 * i2);
    cls.C = h2 / (2.0 * i3);
    return cls;
}

std::vector<RotorLevel> symmetric_top_levels(const TopClassification& cls, unsigned J_max) {
    if (cls.kind == TopKind::asymmetric)
        throw UnsupportedClassificationError(
            "levels are only computed for spherical and symmetric tops; this classification is "
            "asymmetric (three distinct moments)");

    std::vector<RotorLevel> levels;
    for (unsigned J = 0; J <= J_max; ++J) {
        const double base = cls.B * static_cast<double>(J) * static_cast<double>(J + 1);
        if (cls.kind == TopKind::spherical) {
            levels.push_back({J, 0, base});
            continue;
        }
        const double delta =
            (cls.kind == TopKind::prolate_symmetric) ? cls.A - cls.B : cls.C - cls.B;
        for (int K = -static_cast<int>(J); K <= static_cast<int>(J); ++K) {
            const double k2 = static_cast<double>(K) * static_cast<double>(K);
            levels.push_back({J, K, base + delta * k2});
        }
    }
    std::sort(levels.begin(), levels.end(), [](const RotorLevel& a, const RotorLevel& b) {
        return std::tie(a.energy, a.J, a.K) < std::tie(b.energy, b.J, b.K);
    });
    return levels;
}

} // namespace knotflux
