#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "knotflux/curves.hpp"
#include "knotflux/geometry.hpp"

namespace knotflux {

/// Solid torus of revolution: tube of radius `minor_radius` around the circle
/// of radius `major_radius` in the plane through `center` orthogonal to
/// `axis`.
struct SolidTorusSpec {
    Vec3 center;
    Vec3 axis{0.0, 0.0, 1.0};
    double major_radius = 0.0;
    double minor_radius = 0.0;
    double density = 1.0;
};

struct Provenance {
    enum class Kind { exact, monte_carlo };
    Kind kind = Kind::exact;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::uint64_t chunks = 0;
    std::uint64_t accepted = 0;
    /// Per-component standard error of the tensor (zero for exact results).
    Mat3 tensor_stderr;
};

struct InertiaResult {
    double mass = 0.0;
    Vec3 com;
    /// About com, world orientation.
    Mat3 tensor;
    std::array<double, 3> principal_moments{};
    /// Columns are the right-handed principal axes, ordered with the moments.
    Mat3 principal_axes;
    Provenance provenance;
};

struct MCConfig {
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    /// Fixed partition of the sample index range; the result depends on
    /// (seed, samples, chunks) only, never on thread schedule.
    std::uint64_t chunks = 64;
};

enum class OverlapPolicy {
    /// Reject configurations whose solid tori overlap with positive volume
    /// (tangency allowed): the summed tensor would double count mass.
    forbid,
    /// Sum anyway; overlap regions are counted once per torus. Useful for
    /// chain configurations whose same-plane rings touch at ring centers.
    allow,
};

/// Eigen-decomposition of a symmetric 3x3 tensor by cyclic Jacobi rotations.
/// Moments ascending, axes right-handed. Input asymmetric beyond 1e-9
/// relative is rejected.
std::pair<std::array<double, 3>, Mat3> principal_axes(const Mat3& tensor);

/// Closed-form inertia of one solid torus about its own center of mass:
/// M = 2 pi^2 R a^2 rho, I_axis = M(R^2 + 3a^2/4),
/// I_diameter = M(R^2/2 + 5a^2/8), rotated to world orientation.
InertiaResult torus_inertia(const SolidTorusSpec& spec);

/// Sum of per-torus closed forms shifted to the common center of mass by the
/// parallel-axis theorem I' = I_cm + M(d^2 I - d d^T).
InertiaResult composite_inertia(const std::vector<SolidTorusSpec>& tori,
                                OverlapPolicy policy = OverlapPolicy::forbid);

/// Monte Carlo mass/com/tensor of a tube link: uniform samples in the
/// centerline bounding box inflated by tube_radius, accepted iff within
/// tube_radius of the centerline union. Deterministic given cfg regardless of
/// `threads` (0 = hardware concurrency). Standard errors come from the
/// per-chunk spread.
InertiaResult mc_inertia(const Link& link, const MCConfig& cfg, unsigned threads = 0);

/// Torus specs matching make_tight_hopf(a): radius-2a circles at (-a,0,0)
/// axis z and (+a,0,0) axis y.
std::vector<SolidTorusSpec> hopf_tori(double a, double density = 1.0);

/// Torus specs matching make_chain(k, a): centers spaced 2a on the x-axis,
/// alternating axis z / axis y, centered on the origin as a group. For k >= 3
/// same-plane next-nearest tori touch at ring centers and overlap as solid
/// tubes, so composite_inertia over these specs needs OverlapPolicy::allow.
std::vector<SolidTorusSpec> chain_tori(std::size_t k, double a, double density = 1.0);

} // namespace knotflux
