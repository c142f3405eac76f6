#include "knotflux/phases.hpp"

#include <cmath>
#include <numbers>

#include "knotflux/errors.hpp"

namespace knotflux {

double ab_phase_first_order(const FluxConfig& cfg, std::int64_t linking) {
    if (!(cfg.kappa > 0.0)) throw InvalidParameterError("coupling kappa must be positive");
    return cfg.kappa * static_cast<double>(linking) * cfg.phi1;
}

double ab_phase_second_order(const FluxConfig& cfg) {
    if (!(cfg.kappa > 0.0)) throw InvalidParameterError("coupling kappa must be positive");
    return static_cast<double>(cfg.topo_coeff) * (cfg.kappa * cfg.kappa) * cfg.phi1 * cfg.phi2;
}

double josephson_max_current(const FluxConfig& cfg) {
    if (!(cfg.phi0 > 0.0)) throw InvalidParameterError("fluxoid phi0 must be positive");
    if (cfg.j0 < 0.0) throw InvalidParameterError("junction amplitude j0 must be nonnegative");
    const double divisor = cfg.josephson_phi0_squared ? cfg.phi0 * cfg.phi0 : cfg.phi0;
    const double x = cfg.phi1 * cfg.phi2 / divisor;
    return cfg.j0 * std::fabs(std::cos(std::numbers::pi * x));
}

} // namespace knotflux
