#pragma once

#include <map>
#include <string>
#include <vector>

namespace knotflux {

/// Tight-configuration centerline length in tube-radius units.
struct KnotEntry {
    std::string name;
    double length = 0.0;
};

struct StateEntry {
    std::string name;
    double mass = 0.0;
    double sigma = 1.0;
};

struct AssignedPair {
    StateEntry state;
    KnotEntry knot;
};

struct FitPoint {
    double length = 0.0;
    double energy = 0.0;
    double sigma = 1.0;
};

struct FitResult {
    /// MeV per unit length.
    double lambda = 0.0;
    double chi2 = 0.0;
    std::size_t dof = 0;
    std::vector<double> residuals;
    std::vector<AssignedPair> assignments;
};

struct AffineFitResult {
    double intercept = 0.0;
    double slope = 0.0;
    double chi2 = 0.0;
    std::size_t dof = 0;
    std::vector<double> residuals;
    std::vector<AssignedPair> assignments;
};

/// Pair the i-th lightest state with the i-th shortest knot. Requires
/// count(states) <= count(knots) and unique names in each table.
std::vector<AssignedPair> assign_ordered(std::vector<KnotEntry> knots,
                                         std::vector<StateEntry> states);

/// Apply a caller-supplied state-name -> knot-name map; every state must be
/// mapped and every referenced knot must exist, otherwise the error lists the
/// missing names.
std::vector<AssignedPair> assign_explicit(const std::vector<KnotEntry>& knots,
                                          const std::vector<StateEntry>& states,
                                          const std::map<std::string, std::string>& state_to_knot);

/// Weighted least squares through the origin: lambda = sum(w L E)/sum(w L^2)
/// with w = 1/sigma^2; chi2 = sum w (E - lambda L)^2; dof = n - 1.
FitResult fit_scale(const std::vector<FitPoint>& pairs);

/// Weighted linear least squares E ~ intercept + slope * L; dof = n - 2.
/// All lengths equal makes the design singular.
AffineFitResult fit_affine(const std::vector<FitPoint>& pairs);

std::vector<FitPoint> to_fit_points(const std::vector<AssignedPair>& pairs);

} // namespace knotflux
