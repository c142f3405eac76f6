#pragma once

#include <array>
#include <string>
#include <vector>

namespace knotflux {

enum class TopKind { spherical, prolate_symmetric, oblate_symmetric, asymmetric };

const char* top_kind_name(TopKind kind);

struct TopClassification {
    TopKind kind = TopKind::asymmetric;
    /// Principal moments ascending.
    std::array<double, 3> moments{};
    /// Rotational constants hbar^2/(2 I) for the ascending moments, so
    /// A >= B >= C.
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
};

struct RotorLevel {
    unsigned J = 0;
    int K = 0;
    double energy = 0.0;
};

/// Classify a rigid top from its principal moments (any order; sorted
/// internally). Two moments are "equal" when their gap is below tol relative
/// to the largest moment. hbar defaults to 1.
TopClassification classify_top(const std::array<double, 3>& moments, double tol = 1e-9,
                               double hbar = 1.0);

/// Rotational levels for 0 <= J <= J_max, sorted by (energy, J, K).
/// Prolate:  E = B J(J+1) + (A - B) K^2, |K| <= J.
/// Oblate:   E = B J(J+1) + (C - B) K^2, |K| <= J.
/// Spherical: E = B J(J+1), one level per J.
/// Asymmetric tops are rejected with an unsupported-classification error.
std::vector<RotorLevel> symmetric_top_levels(const TopClassification& cls, unsigned J_max);

} // namespace knotflux
