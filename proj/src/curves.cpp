#include "knotflux/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "knotflux/errors.hpp"

namespace knotflux {

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

double Component::arc_length() const {
    double total = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) total += norm(edge_end(i) - edge_start(i));
    return total;
}

Aabb Component::bounding_box() const {
    Aabb box;
    for (const Vec3& v : vertices) box.expand(v);
    return box;
}

Component Component::reversed() const {
    Component out;
    out.vertices.assign(vertices.rbegin(), vertices.rend());
    return out;
}

void Component::validate() const {
    if (vertices.size() < 3) throw InvalidParameterError("component needs at least 3 vertices");
    const double diag = bounding_box().diagonal();
    const double min_sep = 1e-12 * diag;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (norm(edge_end(i) - edge_start(i)) <= min_sep) {
            std::ostringstream msg;
            msg << "consecutive vertices " << i << " and " << (i + 1) % vertices.size()
                << " coincide";
            throw InvalidParameterError(msg.str());
        }
    }
}

void Link::validate() const {
    if (!(tube_radius > 0.0)) throw InvalidParameterError("tube_radius must be positive");
    if (!(density > 0.0)) throw InvalidParameterError("density must be positive");
    if (components.empty()) throw InvalidParameterError("link needs at least one component");
    for (const Component& c : components) c.validate();
}

Aabb Link::bounding_box() const {
    Aabb box;
    for (const Component& c : components) box.expand(c.bounding_box());
    return box;
}

std::vector<EmbeddednessViolation> Link::embeddedness_violations(double tol) const {
    validate();
    if (tol < 0.0) tol = 1e-2 * tube_radius;
    const double threshold = 2.0 * tube_radius - tol;
    const double arc_window = kPi * tube_radius;

    std::vector<EmbeddednessViolation> out;
    for (std::size_t ca = 0; ca < components.size(); ++ca) {
        const Component& A = components[ca];
        const std::size_t na = A.size();
        std::vector<double> cum(na + 1, 0.0);
        for (std::size_t i = 0; i < na; ++i)
            cum[i + 1] = cum[i] + norm(A.edge_end(i) - A.edge_start(i));
        const double total = cum[na];

        for (std::size_t i = 0; i < na; ++i) {
            for (std::size_t j = i + 1; j < na; ++j) {
                const double forward = cum[j] - cum[i + 1];
                const double backward = total - cum[j + 1] + cum[i];
                if (std::min(forward, backward) < arc_window) continue;
                const double d = segment_segment_distance(A.edge_start(i), A.edge_end(i),
                                                          A.edge_start(j), A.edge_end(j));
                if (d < threshold) out.push_back({ca, i, ca, j, d});
            }
        }

        for (std::size_t cb = ca + 1; cb < components.size(); ++cb) {
            const Component& B = components[cb];
            for (std::size_t i = 0; i < na; ++i) {
                for (std::size_t j = 0; j < B.size(); ++j) {
                    const double d = segment_segment_distance(A.edge_start(i), A.edge_end(i),
                                                              B.edge_start(j), B.edge_end(j));
                    if (d < threshold) out.push_back({ca, i, cb, j, d});
                }
            }
        }
    }
    return out;
}

Component make_circle(const Vec3& center, const Vec3& normal, double radius,
                      std::size_t n_vertices, double phase) {
    if (!(radius > 0.0)) throw InvalidParameterError("circle radius must be positive");
    if (n_vertices < 3) throw InvalidParameterError("circle needs at least 3 vertices");
    const double nlen = norm(normal);
    if (!(nlen > 0.0)) throw InvalidParameterError("circle normal is degenerate");

    const Vec3 axis = normal / nlen;
    const auto [u, v] = orthonormal_frame(axis);
    Component out;
    out.vertices.reserve(n_vertices);
    for (std::size_t i = 0; i < n_vertices; ++i) {
        const double t = phase + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_vertices);
        out.vertices.push_back(center + radius * (std::cos(t) * u + std::sin(t) * v));
    }
    return out;
}

Link make_tight_hopf(double a, std::size_t n_vertices, double density) {
    if (!(a > 0.0)) throw InvalidParameterError("tube radius must be positive");
    Link link;
    link.tube_radius = a;
    link.density = density;
    link.components.push_back(
        make_circle({-a, 0.0, 0.0}, {0.0, 0.0, 1.0}, 2.0 * a, n_vertices));
    link.components.push_back(
        make_circle({+a, 0.0, 0.0}, {0.0, 1.0, 0.0}, 2.0 * a, n_vertices));
    link.validate();
    return link;
}

Link make_chain(std::size_t k, double a, std::size_t n_vertices, double density) {
    if (k < 2) throw InvalidParameterError("chain needs at least 2 rings");
    if (!(a > 0.0)) throw InvalidParameterError("tube radius must be positive");
    Link link;
    link.tube_radius = a;
    link.density = density;
    for (std::size_t i = 0; i < k; ++i) {
        const double cx = 2.0 * a * static_cast<double>(i) - a * static_cast<double>(k - 1);
        const Vec3 normal = (i % 2 == 0) ? Vec3{0.0, 0.0, 1.0} : Vec3{0.0, 1.0, 0.0};
        const double phase =
            ((i / 2) % 2 == 1) ? kPi / static_cast<double>(n_vertices) : 0.0;
        link.components.push_back(make_circle({cx, 0.0, 0.0}, normal, 2.0 * a, n_vertices, phase));
    }
    link.validate();
    return link;
}

Link make_borromean(double r1, double r2, std::size_t n_vertices, double tube_radius,
                    double density) {
    if (!(r1 > 0.0) || !(r2 > 0.0)) throw InvalidParameterError("semi-axes must be positive");
    if (r1 == r2)
        throw InvalidParameterError(
            "semi-axes must differ: three equal circles in the coordinate-plane arrangement "
            "intersect instead of interlocking, so the rings are realized as ellipses");
    if (n_vertices < 3) throw InvalidParameterError("ellipse needs at least 3 vertices");
    if (tube_radius <= 0.0) tube_radius = std::min(r1, r2) / 5.0;

    Link link;
    link.tube_radius = tube_radius;
    link.density = density;
    for (int plane = 0; plane < 3; ++plane) {
        Component c;
        c.vertices.reserve(n_vertices);
        for (std::size_t i = 0; i < n_vertices; ++i) {
            const double t =
                2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_vertices);
            const double p = r1 * std::cos(t);
            const double q = r2 * std::sin(t);
            switch (plane) {
                case 0: c.vertices.push_back({p, q, 0.0}); break;
                case 1: c.vertices.push_back({0.0, p, q}); break;
                default: c.vertices.push_back({q, 0.0, p}); break;
            }
        }
        link.components.push_back(std::move(c));
    }
    link.validate();
    return link;
}

Link make_torus_knot(unsigned p, unsigned q, double R, double r, std::size_t n_vertices,
                     double tube_radius, double density) {
    if (p < 1 || q < 1) throw InvalidParameterError("winding numbers must be at least 1");
    if (!(R > r && r > 0.0))
        throw InvalidParameterError("need major radius > tube-of-revolution radius > 0");
    if (!(tube_radius > 0.0)) throw InvalidParameterError("tube_radius must be positive");
    if (n_vertices < 3) throw InvalidParameterError("curve needs at least 3 vertices");

    const unsigned d = std::gcd(p, q);
    const double wp = static_cast<double>(p / d);
    const double wq = static_cast<double>(q / d);

    Link link;
    link.tube_radius = tube_radius;
    link.density = density;
    for (unsigned j = 0; j < d; ++j) {
        Component c;
        c.vertices.reserve(n_vertices);
        const double offset = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(d);
        for (std::size_t i = 0; i < n_vertices; ++i) {
            const double t =
                2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_vertices);
            const double psi = wq * t + offset;
            const double rad = R + r * std::cos(psi);
            c.vertices.push_back({rad * std::cos(wp * t), rad * std::sin(wp * t),
                                  r * std::sin(psi)});
        }
        link.components.push_back(std::move(c));
    }
    link.validate();
    return link;
}

SegmentGrid::SegmentGrid(const Link& link, double cell_size) {
    link.validate();
    inflation_ = link.tube_radius;
    cell_size_ = cell_size > 0.0 ? cell_size : 2.0 * link.tube_radius;
    inflated_box_ = link.bounding_box().inflated(inflation_);

    double max_ext = 0.0;
    for (std::uint32_t ci = 0; ci < link.components.size(); ++ci) {
        const Component& c = link.components[ci];
        for (std::uint32_t si = 0; si < c.size(); ++si) {
            segments_.push_back({c.edge_start(si), c.edge_end(si), ci, si});
            const Vec3 d = segments_.back().b - segments_.back().a;
            max_ext = std::max({max_ext, std::fabs(d.x), std::fabs(d.y), std::fabs(d.z)});
        }
    }
    // Floor the cell size so a segment's inflated box covers O(1) cells. A
    // tube radius far below the edge length would otherwise shatter each
    // segment across millions of cells.
    cell_size_ = std::max(cell_size_, (max_ext + 2.0 * inflation_) / 4.0);

    bool first = true;
    for (std::uint32_t idx = 0; idx < segments_.size(); ++idx) {
        Aabb box;
        box.expand(segments_[idx].a);
        box.expand(segments_[idx].b);
        box = box.inflated(inflation_);
        const CellKey lo = cell_of(box.lo);
        const CellKey hi = cell_of(box.hi);
        for (int x = lo.x; x <= hi.x; ++x)
            for (int y = lo.y; y <= hi.y; ++y)
                for (int z = lo.z; z <= hi.z; ++z) cells_[{x, y, z}].push_back(idx);
        if (first) {
            occ_lo_ = lo;
            occ_hi_ = hi;
            first = false;
        } else {
            occ_lo_ = {std::min(occ_lo_.x, lo.x), std::min(occ_lo_.y, lo.y),
                       std::min(occ_lo_.z, lo.z)};
            occ_hi_ = {std::max(occ_hi_.x, hi.x), std::max(occ_hi_.y, hi.y),
                       std::max(occ_hi_.z, hi.z)};
        }
    }
}

SegmentGrid::CellKey SegmentGrid::cell_of(const Vec3& p) const {
    return {static_cast<int>(std::floor(p.x / cell_size_)),
            static_cast<int>(std::floor(p.y / cell_size_)),
            static_cast<int>(std::floor(p.z / cell_size_))};
}

bool SegmentGrid::within(const Vec3& p, double radius) const {
    if (!inflated_box_.contains(p)) return false;
    const auto it = cells_.find(cell_of(p));
    if (it == cells_.end()) return false;
    const double r2 = radius * radius;
    for (std::uint32_t idx : it->second) {
        const Segment& s = segments_[idx];
        if (point_segment_distance_sq(p, s.a, s.b) <= r2) return true;
    }
    return false;
}

double SegmentGrid::distance(const Vec3& p) const {
    if (segments_.empty()) return std::numeric_limits<double>::infinity();
    const CellKey c0 = cell_of(p);

    auto axis_gap = [](int v, int lo, int hi) {
        if (v < lo) return lo - v;
        if (v > hi) return v - hi;
        return 0;
    };
    const int ring_lo = std::max({axis_gap(c0.x, occ_lo_.x, occ_hi_.x),
                                  axis_gap(c0.y, occ_lo_.y, occ_hi_.y),
                                  axis_gap(c0.z, occ_lo_.z, occ_hi_.z)});
    const int ring_hi = std::max({std::max(std::abs(occ_lo_.x - c0.x), std::abs(occ_hi_.x - c0.x)),
                                  std::max(std::abs(occ_lo_.y - c0.y), std::abs(occ_hi_.y - c0.y)),
                                  std::max(std::abs(occ_lo_.z - c0.z), std::abs(occ_hi_.z - c0.z))});

    double best_sq = std::numeric_limits<double>::infinity();
    for (int k = ring_lo; k <= ring_hi; ++k) {
        const int x0 = std::max(c0.x - k, occ_lo_.x);
        const int x1 = std::min(c0.x + k, occ_hi_.x);
        const int y0 = std::max(c0.y - k, occ_lo_.y);
        const int y1 = std::min(c0.y + k, occ_hi_.y);
        const int z0 = std::max(c0.z - k, occ_lo_.z);
        const int z1 = std::min(c0.z + k, occ_hi_.z);
        for (int x = x0; x <= x1; ++x) {
            for (int y = y0; y <= y1; ++y) {
                for (int z = z0; z <= z1; ++z) {
                    const int cheb = std::max(
                        {std::abs(x - c0.x), std::abs(y - c0.y), std::abs(z - c0.z)});
                    if (cheb != k) continue;
                    const auto it = cells_.find({x, y, z});
                    if (it == cells_.end()) continue;
                    for (std::uint32_t idx : it->second) {
                        const Segment& s = segments_[idx];
                        best_sq = std::min(best_sq, point_segment_distance_sq(p, s.a, s.b));
                    }
                }
            }
        }
        // Cells never visited lie at Chebyshev ring >= k+1, hence at least
        // k * cell_size away from p.
        const double reach = static_cast<double>(k) * cell_size_;
        if (best_sq <= reach * reach) break;
    }
    return std::sqrt(best_sq);
}

double distance_to_link(const Vec3& p, const Link& link, const SegmentGrid& grid) {
    std::size_t n_segments = 0;
    for (const Component& c : link.components) n_segments += c.size();
    if (n_segments != grid.segment_count())
        throw InvalidParameterError("grid was not built from this link");
    return grid.distance(p);
}

CurvePairDistance min_distance(const Component& c1, const Component& c2) {
    CurvePairDistance best;
    best.distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c1.size(); ++i) {
        const Vec3 a0 = c1.edge_start(i);
        const Vec3 a1 = c1.edge_end(i);
        for (std::size_t j = 0; j < c2.size(); ++j) {
            const double d =
                segment_segment_distance(a0, a1, c2.edge_start(j), c2.edge_end(j));
            if (d < best.distance) best = {d, i, j};
        }
    }
    return best;
}

} // namespace knotflux
