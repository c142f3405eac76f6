#include "knotflux/inertia.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "knotflux/errors.hpp"
#include "knotflux/rng.hpp"

namespace knotflux {

namespace {

constexpr double kPi = std::numbers::pi;

void jacobi_rotate(Mat3& A, Mat3& V, int p, int q) {
    const double apq = A(p, q);
    if (apq == 0.0) return;
    const double theta = 0.5 * std::atan2(2.0 * apq, A(q, q) - A(p, p));
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    const double app = A(p, p);
    const double aqq = A(q, q);
    A(p, p) = c * c * app - 2.0 * s * c * apq + s * s * aqq;
    A(q, q) = s * s * app + 2.0 * s * c * apq + c * c * aqq;
    A(p, q) = 0.0;
    A(q, p) = 0.0;
    for (int k = 0; k < 3; ++k) {
        if (k == p || k == q) continue;
        const double akp = A(k, p);
        const double akq = A(k, q);
        A(k, p) = c * akp - s * akq;
        A(p, k) = A(k, p);
        A(k, q) = s * akp + c * akq;
        A(q, k) = A(k, q);
    }
    for (int k = 0; k < 3; ++k) {
        const double vkp = V(k, p);
        const double vkq = V(k, q);
        V(k, p) = c * vkp - s * vkq;
        V(k, q) = s * vkp + c * vkq;
    }
}

double off_diagonal_norm(const Mat3& A) {
    return std::sqrt(2.0 * (A(0, 1) * A(0, 1) + A(0, 2) * A(0, 2) + A(1, 2) * A(1, 2)));
}

/// Distance from a point to the circle of given center, unit axis and radius.
double point_circle_distance(const Vec3& p, const Vec3& center, const Vec3& axis, double radius) {
    const Vec3 d = p - center;
    const double z = dot(d, axis);
    const Vec3 radial = d - z * axis;
    const double rho = norm(radial);
    if (rho == 0.0) return std::sqrt(z * z + radius * radius);
    const double dr = rho - radius;
    return std::sqrt(z * z + dr * dr);
}

/// Minimum distance between two circles: coarse angular scan of one circle
/// followed by golden-section refinement around every sampled local minimum.
double circle_circle_distance(const Vec3& c1, const Vec3& n1, double r1, const Vec3& c2,
                              const Vec3& n2, double r2) {
    const auto [u, v] = orthonormal_frame(n2);
    auto eval = [&](double t) {
        const Vec3 p = c2 + r2 * (std::cos(t) * u + std::sin(t) * v);
        return point_circle_distance(p, c1, n1, r1);
    };

    constexpr int kSamples = 1024;
    std::array<double, kSamples> f{};
    for (int i = 0; i < kSamples; ++i)
        f[i] = eval(2.0 * kPi * static_cast<double>(i) / kSamples);

    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double best = *std::min_element(f.begin(), f.end());
    for (int i = 0; i < kSamples; ++i) {
        const double prev = f[(i + kSamples - 1) % kSamples];
        const double next = f[(i + 1) % kSamples];
        // Strict on one side so a flat plateau refines once, not everywhere.
        if (!(f[i] < prev && f[i] <= next)) continue;
        double lo = 2.0 * kPi * static_cast<double>(i - 1) / kSamples;
        double hi = 2.0 * kPi * static_cast<double>(i + 1) / kSamples;
        double x1 = hi - golden * (hi - lo);
        double x2 = lo + golden * (hi - lo);
        double f1 = eval(x1);
        double f2 = eval(x2);
        for (int it = 0; it < 60; ++it) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - golden * (hi - lo);
                f1 = eval(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + golden * (hi - lo);
                f2 = eval(x2);
            }
        }
        best = std::min({best, f1, f2});
    }
    return best;
}

void validate_torus(const SolidTorusSpec& spec) {
    if (!(norm(spec.axis) > 0.0)) throw InvalidParameterError("torus axis is degenerate");
    if (!(spec.minor_radius > 0.0))
        throw InvalidParameterError("torus minor radius must be positive");
    if (!(spec.major_radius > spec.minor_radius))
        throw InvalidParameterError(
            "torus major radius must exceed the minor radius (horn/self-intersecting otherwise)");
    if (!(spec.density > 0.0)) throw InvalidParameterError("torus density must be positive");
}

struct ChunkSums {
    std::uint64_t accepted = 0;
    double s1[3] = {0.0, 0.0, 0.0};
    // xx, yy, zz, xy, xz, yz
    double s2[6] = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
};

Mat3 second_moment_tensor(const double s2[6]) {
    Mat3 m;
    m(0, 0) = s2[0];
    m(1, 1) = s2[1];
    m(2, 2) = s2[2];
    m(0, 1) = m(1, 0) = s2[3];
    m(0, 2) = m(2, 0) = s2[4];
    m(1, 2) = m(2, 1) = s2[5];
    return m;
}

Mat3 inertia_from_second_moments(const Mat3& qq) {
    return qq.trace() * Mat3::identity() - qq;
}

} // namespace

std::pair<std::array<double, 3>, Mat3> principal_axes(const Mat3& tensor) {
    const double scale = tensor.max_abs();
    double asym = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            asym = std::max(asym, std::fabs(tensor(i, j) - tensor(j, i)));
    if (scale > 0.0 && asym > 1e-9 * scale)
        throw InvalidParameterError("tensor is not symmetric");

    Mat3 A;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) = 0.5 * (tensor(i, j) + tensor(j, i));
    Mat3 V = Mat3::identity();

    const double target = 1e-12 * tensor.frobenius();
    for (int sweep = 0; sweep < 100 && off_diagonal_norm(A) > target; ++sweep) {
        jacobi_rotate(A, V, 0, 1);
        jacobi_rotate(A, V, 0, 2);
        jacobi_rotate(A, V, 1, 2);
    }

    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return A(a, a) < A(b, b); });

    std::array<double, 3> moments{A(order[0], order[0]), A(order[1], order[1]),
                                  A(order[2], order[2])};
    Mat3 axes;
    for (int j = 0; j < 3; ++j) axes.set_col(j, V.col(order[j]));
    if (determinant(axes) < 0.0) axes.set_col(2, -1.0 * axes.col(2));
    return {moments, axes};
}

InertiaResult torus_inertia(const SolidTorusSpec& spec) {
    validate_torus(spec);
    const double R = spec.major_radius;
    const double a = spec.minor_radius;
    const double M = 2.0 * kPi * kPi * R * a * a * spec.density;
    const double i_axis = M * (R * R + 0.75 * a * a);
    const double i_diam = M * (0.5 * R * R + 0.625 * a * a);

    const Vec3 n = normalized(spec.axis);
    const auto [u, v] = orthonormal_frame(n);
    Mat3 Q;
    Q.set_col(0, u);
    Q.set_col(1, v);
    Q.set_col(2, n);
    const Mat3 T = Q * Mat3::diagonal(i_diam, i_diam, i_axis) * Q.transposed();

    InertiaResult r;
    r.mass = M;
    r.com = spec.center;
    r.tensor = T;
    std::tie(r.principal_moments, r.principal_axes) = principal_axes(T);
    r.provenance.kind = Provenance::Kind::exact;
    return r;
}

InertiaResult composite_inertia(const std::vector<SolidTorusSpec>& tori, OverlapPolicy policy) {
    if (tori.empty()) throw InvalidParameterError("composite needs at least one torus");
    for (const SolidTorusSpec& t : tori) validate_torus(t);

    if (policy == OverlapPolicy::forbid) {
        for (std::size_t i = 0; i < tori.size(); ++i) {
            for (std::size_t j = i + 1; j < tori.size(); ++j) {
                const double d = circle_circle_distance(
                    tori[i].center, normalized(tori[i].axis), tori[i].major_radius,
                    tori[j].center, normalized(tori[j].axis), tori[j].major_radius);
                const double sum = tori[i].minor_radius + tori[j].minor_radius;
                if (d < sum - 1e-9 * sum) {
                    std::ostringstream msg;
                    msg << "solid tori " << i << " and " << j
                        << " overlap (centerline distance " << d << " < " << sum
                        << "); their mass would be double counted";
                    throw InvalidParameterError(msg.str());
                }
            }
        }
    }

    double mass = 0.0;
    Vec3 weighted{};
    std::vector<InertiaResult> parts;
    parts.reserve(tori.size());
    for (const SolidTorusSpec& t : tori) {
        parts.push_back(torus_inertia(t));
        mass += parts.back().mass;
        weighted += parts.back().mass * parts.back().com;
    }
    const Vec3 com = weighted / mass;

    Mat3 total = Mat3::zero();
    for (const InertiaResult& part : parts) {
        const Vec3 d = part.com - com;
        total = total + part.tensor +
                part.mass * (norm2(d) * Mat3::identity() - Mat3::outer(d, d));
    }

    InertiaResult r;
    r.mass = mass;
    r.com = com;
    r.tensor = total;
    std::tie(r.principal_moments, r.principal_axes) = principal_axes(total);
    r.provenance.kind = Provenance::Kind::exact;
    return r;
}

InertiaResult mc_inertia(const Link& link, const MCConfig& cfg, unsigned threads) {
    link.validate();
    if (cfg.samples == 0) throw InvalidParameterError("samples must be positive");
    if (cfg.chunks == 0) throw InvalidParameterError("chunks must be positive");
    if (cfg.chunks > cfg.samples)
        throw InvalidParameterError("chunks must not exceed samples");

    const SegmentGrid grid(link);
    const Aabb box = grid.inflated_box();
    const Vec3 ext = box.extent();
    const double v_box = ext.x * ext.y * ext.z;
    const Vec3 r0 = 0.5 * (box.lo + box.hi);
    const double a = link.tube_radius;
    const SplitMix64 rng(cfg.seed);

    const std::uint64_t N = cfg.samples;
    const std::uint64_t C = cfg.chunks;
    std::vector<ChunkSums> sums(C);

    auto run_chunk = [&](std::uint64_t c) {
        ChunkSums& out = sums[c];
        const std::uint64_t begin = c * N / C;
        const std::uint64_t end = (c + 1) * N / C;
        for (std::uint64_t i = begin; i < end; ++i) {
            const Vec3 p{box.lo.x + rng.uniform01(3 * i) * ext.x,
                         box.lo.y + rng.uniform01(3 * i + 1) * ext.y,
                         box.lo.z + rng.uniform01(3 * i + 2) * ext.z};
            if (!grid.within(p, a)) continue;
            const Vec3 q = p - r0;
            out.accepted += 1;
            out.s1[0] += q.x;
            out.s1[1] += q.y;
            out.s1[2] += q.z;
            out.s2[0] += q.x * q.x;
            out.s2[1] += q.y * q.y;
            out.s2[2] += q.z * q.z;
            out.s2[3] += q.x * q.y;
            out.s2[4] += q.x * q.z;
            out.s2[5] += q.y * q.z;
        }
    };

    unsigned worker_count = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (worker_count == 0) worker_count = 1;
    worker_count = static_cast<unsigned>(
        std::min<std::uint64_t>(worker_count, C));
    if (worker_count <= 1) {
        for (std::uint64_t c = 0; c < C; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (unsigned w = 0; w < worker_count; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t c = next.fetch_add(1); c < C; c = next.fetch_add(1))
                    run_chunk(c);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    std::uint64_t accepted = 0;
    double S1[3] = {0.0, 0.0, 0.0};
    double S2[6] = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    for (std::uint64_t c = 0; c < C; ++c) {
        accepted += sums[c].accepted;
        for (int k = 0; k < 3; ++k) S1[k] += sums[c].s1[k];
        for (int k = 0; k < 6; ++k) S2[k] += sums[c].s2[k];
    }
    if (accepted == 0) throw DegeneracyError("no Monte Carlo samples hit the tube");

    const double rho = link.density;
    const double n_acc = static_cast<double>(accepted);
    const double weight = rho * v_box / static_cast<double>(N);
    const Vec3 mean{S1[0] / n_acc, S1[1] / n_acc, S1[2] / n_acc};

    Mat3 qq = second_moment_tensor(S2);
    qq = qq - n_acc * Mat3::outer(mean, mean);
    const Mat3 tensor = weight * inertia_from_second_moments(qq);

    // Per-chunk tensors about the global center of mass give the spread that
    // the standard error is read from.
    Mat3 t_bar = Mat3::zero();
    std::vector<Mat3> t_chunk(C);
    for (std::uint64_t c = 0; c < C; ++c) {
        const std::uint64_t span = (c + 1) * N / C - c * N / C;
        Mat3 cq = second_moment_tensor(sums[c].s2);
        const Vec3 cs1{sums[c].s1[0], sums[c].s1[1], sums[c].s1[2]};
        cq = cq - Mat3::outer(cs1, mean) - Mat3::outer(mean, cs1) +
             static_cast<double>(sums[c].accepted) * Mat3::outer(mean, mean);
        t_chunk[c] = (rho * v_box / static_cast<double>(span)) *
                     inertia_from_second_moments(cq);
        t_bar = t_bar + (static_cast<double>(span) / static_cast<double>(N)) * t_chunk[c];
    }
    Mat3 stderr_tensor = Mat3::zero();
    if (C >= 2) {
        for (std::uint64_t c = 0; c < C; ++c) {
            const std::uint64_t span = (c + 1) * N / C - c * N / C;
            const double w = static_cast<double>(span) / static_cast<double>(N);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const double d = t_chunk[c](i, j) - t_bar(i, j);
                    stderr_tensor(i, j) += w * w * d * d;
                }
        }
        const double bessel = static_cast<double>(C) / static_cast<double>(C - 1);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                stderr_tensor(i, j) = std::sqrt(bessel * stderr_tensor(i, j));
    }

    InertiaResult r;
    r.mass = weight * n_acc;
    r.com = r0 + mean;
    r.tensor = tensor;
    std::tie(r.principal_moments, r.principal_axes) = principal_axes(tensor);
    r.provenance.kind = Provenance::Kind::monte_carlo;
    r.provenance.seed = cfg.seed;
    r.provenance.samples = cfg.samples;
    r.provenance.chunks = cfg.chunks;
    r.provenance.accepted = accepted;
    r.provenance.tensor_stderr = stderr_tensor;
    return r;
}

std::vector<SolidTorusSpec> hopf_tori(double a, double density) {
    if (!(a > 0.0)) throw InvalidParameterError("tube radius must be positive");
    return {
        {{-a, 0.0, 0.0}, {0.0, 0.0, 1.0}, 2.0 * a, a, density},
        {{+a, 0.0, 0.0}, {0.0, 1.0, 0.0}, 2.0 * a, a, density},
    };
}

std::vector<SolidTorusSpec> chain_tori(std::size_t k, double a, double density) {
    if (k < 2) throw InvalidParameterError("chain needs at least 2 rings");
    if (!(a > 0.0)) throw InvalidParameterError("tube radius must be positive");
    std::vector<SolidTorusSpec> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double cx = 2.0 * a * static_cast<double>(i) - a * static_cast<double>(k - 1);
        const Vec3 axis = (i % 2 == 0) ? Vec3{0.0, 0.0, 1.0} : Vec3{0.0, 1.0, 0.0};
        out.push_back({{cx, 0.0, 0.0}, axis, 2.0 * a, a, density});
    }
    return out;
}

} // namespace knotflux
