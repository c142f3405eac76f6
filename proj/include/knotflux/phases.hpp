#pragma once

#include <cstdint>

namespace knotflux {

/// Flux/junction parameters in gaussian units. No unit conversion happens in
/// the library; callers supply consistent numbers.
struct FluxConfig {
    double phi1 = 0.0;
    double phi2 = 0.0;
    double phi0 = 1.0;
    double j0 = 1.0;
    /// Coupling e/(hbar c).
    double kappa = 1.0;
    /// Integer coefficient carrying the third-curve entanglement class; 0
    /// means topologically trivial at second order.
    int topo_coeff = 1;
    /// Off: junction argument pi*phi1*phi2/phi0. On: pi*phi1*phi2/phi0^2,
    /// which makes the argument dimensionless when fluxes carry units.
    bool josephson_phi0_squared = false;
};

/// First-order interference phase kappa * linking * phi1.
double ab_phase_first_order(const FluxConfig& cfg, std::int64_t linking);

/// Second-order phase topo_coeff * kappa^2 * phi1 * phi2, the leading effect
/// for configurations with zero pairwise linking.
double ab_phase_second_order(const FluxConfig& cfg);

/// Maximum junction current j0 * |cos(pi * phi1 * phi2 / phi0)| (or /phi0^2
/// with the alternative normalization). Requires phi0 > 0.
double josephson_max_current(const FluxConfig& cfg);

} // namespace knotflux
