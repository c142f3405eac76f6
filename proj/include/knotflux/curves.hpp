#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "knotflux/geometry.hpp"

namespace knotflux {

/// Closed polygonal curve. The edge from the last vertex back to the first is
/// implicit; vertices are stored once.
struct Component {
    std::vector<Vec3> vertices;

    std::size_t size() const { return vertices.size(); }
    /// Endpoints of edge i, i in [0, size()).
    Vec3 edge_start(std::size_t i) const { return vertices[i]; }
    Vec3 edge_end(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }

    double arc_length() const;
    Aabb bounding_box() const;
    Component reversed() const;

    /// Throws invalid-parameter if fewer than 3 vertices or if consecutive
    /// vertices coincide (separation <= 1e-12 x bounding-box diagonal).
    void validate() const;
};

struct EmbeddednessViolation {
    std::size_t component_a = 0;
    std::size_t segment_a = 0;
    std::size_t component_b = 0;
    std::size_t segment_b = 0;
    double distance = 0.0;
};

/// Union of closed tubes: polygonal centerlines plus a common tube radius and
/// uniform density. A point belongs to the tube iff its distance to the
/// centerline union is <= tube_radius, so touching components are not double
/// counted.
struct Link {
    std::vector<Component> components;
    double tube_radius = 0.0;
    double density = 1.0;

    void validate() const;
    Aabb bounding_box() const;

    /// Diagnostic, not fatal: reports segment pairs closer than
    /// 2*tube_radius - tol. Pairs within the same component are only tested
    /// when their separation along the curve exceeds pi*tube_radius, since
    /// neighbouring segments of any smooth curve are legitimately close.
    /// tol < 0 selects the default 1e-2*tube_radius.
    std::vector<EmbeddednessViolation> embeddedness_violations(double tol = -1.0) const;
};

/// Regular n-gon inscribed in the circle of the given center, normal and
/// radius. The in-plane frame is deterministic (see orthonormal_frame); phase
/// rotates the first vertex within the plane.
Component make_circle(const Vec3& center, const Vec3& normal, double radius,
                      std::size_t n_vertices, double phase = 0.0);

/// Two interlocked circles of radius 2a with tube radius a: one in the
/// xy-plane centered at (-a,0,0), one in the xz-plane centered at (+a,0,0).
/// Each circle passes through the other's center; the tubes are tangent and
/// the center of mass of the union sits at the origin.
Link make_tight_hopf(double a, std::size_t n_vertices = 512, double density = 1.0);

/// k circles of radius 2a with tube radius a, centers spaced 2a along the
/// x-axis and centered on the origin as a group, alternating between the
/// xy-plane and the xz-plane. k = 2 reproduces make_tight_hopf. For k >= 3
/// same-plane next-nearest circles are externally tangent; every second
/// same-plane polygon is phase-shifted by half a vertex step so the polygonal
/// centerlines stay disjoint.
Link make_chain(std::size_t k, double a, std::size_t n_vertices = 512, double density = 1.0);

/// Three congruent ellipses with semi-axes (r1, r2), one per coordinate
/// plane with the axes cyclically permuted: the standard realization of
/// pairwise-unlinked but collectively inseparable rings. Requires r1 != r2
/// (round rings in this arrangement would intersect). tube_radius <= 0
/// selects the default min(r1, r2)/5.
Link make_borromean(double r1, double r2, std::size_t n_vertices = 512,
                    double tube_radius = -1.0, double density = 1.0);

/// (p,q) curve on the torus of major radius R, tube-of-revolution radius r:
/// gcd(p,q) components, each winding p/gcd times around the symmetry axis and
/// q/gcd times around the tube, offset in tube angle.
Link make_torus_knot(unsigned p, unsigned q, double R, double r, std::size_t n_vertices = 512,
                     double tube_radius = 0.1, double density = 1.0);

/// Spatial hash over all centerline segments of a link. Each segment is
/// registered in every cell touched by its bounding box inflated by
/// tube_radius, so a single-cell scan decides tube membership and an
/// expanding-shell scan recovers the exact minimum distance.
class SegmentGrid {
  public:
    struct Segment {
        Vec3 a, b;
        std::uint32_t component = 0;
        std::uint32_t index = 0;
    };

    /// cell_size <= 0 selects the default 2*tube_radius. The effective cell
    /// size is floored so that one segment spans a bounded number of cells;
    /// queries are exact for any cell size, only their cost changes.
    explicit SegmentGrid(const Link& link, double cell_size = -1.0);

    double cell_size() const { return cell_size_; }
    const Aabb& inflated_box() const { return inflated_box_; }
    std::size_t segment_count() const { return segments_.size(); }

    /// True iff p lies within `radius` of some segment. Only valid for
    /// radius <= the link's tube_radius (the registration inflation).
    bool within(const Vec3& p, double radius) const;

    /// Exact minimum distance from p to the union of all segments; equals the
    /// brute-force scan.
    double distance(const Vec3& p) const;

  private:
    struct CellKey {
        int x = 0, y = 0, z = 0;
        bool operator==(const CellKey&) const = default;
    };
    struct CellKeyHash {
        std::size_t operator()(const CellKey& k) const {
            std::uint64_t h = 1469598103934665603ull;
            for (std::uint64_t v : {static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.x)),
                                    static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.y)),
                                    static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.z))}) {
                h ^= v;
                h *= 1099511628211ull;
            }
            return static_cast<std::size_t>(h);
        }
    };

    CellKey cell_of(const Vec3& p) const;

    double cell_size_ = 0.0;
    double inflation_ = 0.0;
    Aabb inflated_box_;
    std::vector<Segment> segments_;
    std::unordered_map<CellKey, std::vector<std::uint32_t>, CellKeyHash> cells_;
    CellKey occ_lo_, occ_hi_;
};

/// Exact minimum distance from p to the centerline union of the link, served
/// through the grid.
double distance_to_link(const Vec3& p, const Link& link, const SegmentGrid& grid);

/// Minimum distance between two closed polygonal curves, with the realizing
/// segment pair.
struct CurvePairDistance {
    double distance = 0.0;
    std::size_t segment_a = 0;
    std::size_t segment_b = 0;
};
CurvePairDistance min_distance(const Component& c1, const Component& c2);

} // namespace knotflux
