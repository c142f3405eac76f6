#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "knotflux/curves.hpp"
#include "knotflux/errors.hpp"
#include "knotflux/inertia.hpp"

using namespace knotflux;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

std::mt19937_64 test_gen(61803u);

double unif(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(test_gen);
}

Vec3 random_unit() {
    while (true) {
        Vec3 v{unif(-1, 1), unif(-1, 1), unif(-1, 1)};
        const double n = norm(v);
        if (n > 0.1 && n < 1.0) return v / n;
    }
}

void check_orthonormal(const Mat3& axes, double tol) {
    const Mat3 gram = axes.transposed() * axes;
    const Mat3 diff = gram - Mat3::identity();
    CHECK(diff.max_abs() < tol);
    CHECK(determinant(axes) == doctest::Approx(1.0).epsilon(1e-9));
}

bool tensors_identical(const Mat3& a, const Mat3& b) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

} // namespace

TEST_CASE("eigen solve recovers a rotated diagonal tensor") {
    const Mat3 rot = rotation_about_axis(normalized({1, 2, 3}), 0.7);
    const Mat3 t = rot * Mat3::diagonal(1.0, 2.0, 3.0) * rot.transposed();
    const auto [moments, axes] = principal_axes(t);
    CHECK(moments[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(moments[1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(moments[2] == doctest::Approx(3.0).epsilon(1e-10));
    check_orthonormal(axes, 1e-10);
    for (int j = 0; j < 3; ++j) {
        const Vec3 residual = t * axes.col(j) - moments[j] * axes.col(j);
        CHECK(norm(residual) < 1e-9);
    }
}

TEST_CASE("eigen solve keeps an already diagonal tensor") {
    const auto [moments, axes] = principal_axes(Mat3::diagonal(3.0, 1.0, 2.0));
    CHECK(moments[0] == 1.0);
    CHECK(moments[1] == 2.0);
    CHECK(moments[2] == 3.0);
    check_orthonormal(axes, 1e-12);
}

TEST_CASE("eigen solve rejects asymmetric input") {
    Mat3 t = Mat3::diagonal(1.0, 2.0, 3.0);
    t(0, 1) = 1.0;
    CHECK_THROWS_AS(principal_axes(t), InvalidParameterError);
}

TEST_CASE("closed form for the tight aspect ratio torus") {
    SolidTorusSpec spec;
    spec.center = {5.0, -2.0, 3.0};
    spec.major_radius = 2.0;
    spec.minor_radius = 1.0;
    const InertiaResult r = torus_inertia(spec);

    CHECK(r.mass == doctest::Approx(4.0 * kPi2).epsilon(1e-13));
    CHECK(r.com.x == 5.0);
    CHECK(r.com.y == -2.0);
    CHECK(r.com.z == 3.0);
    CHECK(r.tensor(0, 0) == doctest::Approx(10.5 * kPi2).epsilon(1e-13));
    CHECK(r.tensor(1, 1) == doctest::Approx(10.5 * kPi2).epsilon(1e-13));
    CHECK(r.tensor(2, 2) == doctest::Approx(19.0 * kPi2).epsilon(1e-13));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(std::abs(r.tensor(i, j)) < 1e-12 * 19.0 * kPi2);
    CHECK(r.principal_moments[0] == doctest::Approx(10.5 * kPi2).epsilon(1e-12));
    CHECK(r.principal_moments[1] == doctest::Approx(10.5 * kPi2).epsilon(1e-12));
    CHECK(r.principal_moments[2] == doctest::Approx(19.0 * kPi2).epsilon(1e-12));
    CHECK(r.provenance.kind == Provenance::Kind::exact);
    CHECK(r.provenance.tensor_stderr.max_abs() == 0.0);
}

TEST_CASE("thin ring limit of the torus closed form") {
    SolidTorusSpec spec;
    spec.major_radius = 3.0;
    spec.minor_radius = 1e-4;
    const InertiaResult r = torus_inertia(spec);
    CHECK(r.tensor(2, 2) / r.mass == doctest::Approx(9.0).epsilon(1e-8));
    CHECK(r.tensor(0, 0) / r.mass == doctest::Approx(4.5).epsilon(1e-8));
}

TEST_CASE("tilted torus matches the projector form of its tensor") {
    for (int trial = 0; trial < 10; ++trial) {
        SolidTorusSpec spec;
        spec.center = {unif(-2, 2), unif(-2, 2), unif(-2, 2)};
        spec.axis = random_unit();
        spec.major_radius = unif(1.5, 4.0);
        spec.minor_radius = unif(0.2, 1.0);
        spec.density = unif(0.5, 2.0);
        const InertiaResult r = torus_inertia(spec);

        const double R = spec.major_radius;
        const double a = spec.minor_radius;
        const double i_axis = r.mass * (R * R + 0.75 * a * a);
        const double i_diam = r.mass * (0.5 * R * R + 0.625 * a * a);
        const Mat3 expected = i_diam * (Mat3::identity() - Mat3::outer(spec.axis, spec.axis)) +
                              i_axis * Mat3::outer(spec.axis, spec.axis);
        CHECK((r.tensor - expected).max_abs() < 1e-12 * expected.max_abs());

        const Vec3 along = r.tensor * spec.axis - i_axis * spec.axis;
        CHECK(norm(along) < 1e-11 * i_axis);
        CHECK(r.principal_moments[2] == doctest::Approx(i_axis).epsilon(1e-11));
        CHECK(std::abs(dot(r.principal_axes.col(2), spec.axis)) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("torus validation") {
    SolidTorusSpec spec;
    spec.major_radius = 2.0;
    spec.minor_radius = 1.0;

    SolidTorusSpec bad = spec;
    bad.minor_radius = 0.0;
    CHECK_THROWS_AS(torus_inertia(bad), InvalidParameterError);
    bad = spec;
    bad.major_radius = 0.5;
    CHECK_THROWS_AS(torus_inertia(bad), InvalidParameterError);
    bad = spec;
    bad.density = -1.0;
    CHECK_THROWS_AS(torus_inertia(bad), InvalidParameterError);
    bad = spec;
    bad.axis = {0, 0, 0};
    CHECK_THROWS_AS(torus_inertia(bad), InvalidParameterError);
}

TEST_CASE("composite of one torus is that torus") {
    SolidTorusSpec spec;
    spec.center = {1.0, 2.0, -0.5};
    spec.axis = normalized({1, 1, 0});
    spec.major_radius = 3.0;
    spec.minor_radius = 0.5;
    spec.density = 1.3;
    const InertiaResult one = torus_inertia(spec);
    const InertiaResult comp = composite_inertia({spec});
    CHECK(comp.mass == doctest::Approx(one.mass).epsilon(1e-14));
    CHECK(norm(comp.com - one.com) < 1e-14 * norm(one.com));
    CHECK((comp.tensor - one.tensor).max_abs() < 1e-14 * one.tensor.max_abs());
}

TEST_CASE("tight pair composite diagonal") {
    const InertiaResult r = composite_inertia(hopf_tori(1.0));
    CHECK(r.mass == doctest::Approx(8.0 * kPi2).epsilon(1e-13));
    CHECK(norm(r.com) == 0.0);
    CHECK(r.principal_moments[0] == doctest::Approx(21.0 * kPi2).epsilon(1e-12));
    CHECK(r.principal_moments[1] == doctest::Approx(37.5 * kPi2).epsilon(1e-12));
    CHECK(r.principal_moments[2] == doctest::Approx(37.5 * kPi2).epsilon(1e-12));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(std::abs(r.tensor(i, j)) < 1e-12 * r.tensor.max_abs());

    const double rho = 2.0;
    const double a = 0.5;
    const double unit = kPi2 * rho * std::pow(a, 5);
    const InertiaResult s = composite_inertia(hopf_tori(a, rho));
    CHECK(s.principal_moments[0] == doctest::Approx(21.0 * unit).epsilon(1e-12));
    CHECK(s.principal_moments[1] == doctest::Approx(37.5 * unit).epsilon(1e-12));
    CHECK(s.principal_moments[2] == doctest::Approx(37.5 * unit).epsilon(1e-12));
}

TEST_CASE("composite tensor is translation invariant about the center of mass") {
    auto tori = hopf_tori(1.0);
    const InertiaResult base = composite_inertia(tori);
    const Vec3 shift{4.0, -7.0, 2.5};
    for (SolidTorusSpec& t : tori) t.center += shift;
    const InertiaResult moved = composite_inertia(tori);
    CHECK((moved.tensor - base.tensor).max_abs() < 1e-12 * base.tensor.max_abs());
    CHECK(norm(moved.com - (base.com + shift)) < 1e-12);
}

TEST_CASE("overlapping solid tori are rejected, tangency is not") {
    SolidTorusSpec a;
    a.major_radius = 2.0;
    a.minor_radius = 1.0;
    SolidTorusSpec b = a;
    b.center = {0.5, 0.0, 0.0};
    CHECK_THROWS_AS(composite_inertia({a, b}), InvalidParameterError);
    CHECK_NOTHROW(composite_inertia({a, b}, OverlapPolicy::allow));

    // Coplanar rings whose tubes just touch: centerline gap equals the sum of
    // the minor radii.
    SolidTorusSpec c = a;
    c.center = {6.0, 0.0, 0.0};
    CHECK_NOTHROW(composite_inertia({a, c}));
}

TEST_CASE("ring chains: same-plane next-nearest tubes touch") {
    CHECK_THROWS_AS(composite_inertia(chain_tori(3, 1.0)), InvalidParameterError);
    try {
        composite_inertia(chain_tori(3, 1.0));
    } catch (const InvalidParameterError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("0") != std::string::npos);
        CHECK(msg.find("2") != std::string::npos);
    }
    const InertiaResult r = composite_inertia(chain_tori(3, 1.0), OverlapPolicy::allow);
    CHECK(r.mass == doctest::Approx(12.0 * kPi2).epsilon(1e-13));
    CHECK(r.principal_moments[0] == doctest::Approx(31.5 * kPi2).epsilon(1e-12));
    CHECK(r.principal_moments[1] == doctest::Approx(72.0 * kPi2).epsilon(1e-12));
    CHECK(r.principal_moments[2] == doctest::Approx(80.5 * kPi2).epsilon(1e-12));
}

TEST_CASE("chain of two equals the tight pair") {
    const InertiaResult chain = composite_inertia(chain_tori(2, 1.0));
    const InertiaResult pair = composite_inertia(hopf_tori(1.0));
    CHECK(tensors_identical(chain.tensor, pair.tensor));
    CHECK(chain.mass == pair.mass);
}

TEST_CASE("even chains are degenerate pairs, odd chains are not") {
    for (std::size_t k : {4u, 6u}) {
        const InertiaResult r = composite_inertia(chain_tori(k, 1.0), OverlapPolicy::allow);
        const double gap = (r.principal_moments[2] - r.principal_moments[1]) /
                           r.principal_moments[2];
        CHECK(gap < 1e-9);
        CHECK(r.principal_moments[0] < r.principal_moments[1]);
    }
    const InertiaResult odd = composite_inertia(chain_tori(3, 1.0), OverlapPolicy::allow);
    const double low_gap = (odd.principal_moments[1] - odd.principal_moments[0]) /
                           odd.principal_moments[2];
    const double high_gap = (odd.principal_moments[2] - odd.principal_moments[1]) /
                            odd.principal_moments[2];
    CHECK(low_gap > 1e-3);
    CHECK(high_gap > 1e-3);

    const InertiaResult four = composite_inertia(chain_tori(4, 1.0), OverlapPolicy::allow);
    CHECK(four.principal_moments[0] == doctest::Approx(42.0 * kPi2).epsilon(1e-12));
    CHECK(four.principal_moments[1] == doctest::Approx(139.0 * kPi2).epsilon(1e-12));
}

TEST_CASE("sampled tensor is reproducible and thread-schedule independent") {
    const Link hopf = make_tight_hopf(1.0, 64);
    MCConfig cfg;
    cfg.seed = 42;
    cfg.samples = 20000;
    cfg.chunks = 8;
    const InertiaResult r1 = mc_inertia(hopf, cfg, 1);
    const InertiaResult r2 = mc_inertia(hopf, cfg, 1);
    const InertiaResult r4 = mc_inertia(hopf, cfg, 4);
    CHECK(tensors_identical(r1.tensor, r2.tensor));
    CHECK(tensors_identical(r1.tensor, r4.tensor));
    CHECK(r1.mass == r4.mass);
    CHECK(r1.com.x == r4.com.x);
    CHECK(r1.com.y == r4.com.y);
    CHECK(r1.com.z == r4.com.z);
    CHECK(r1.provenance.accepted == r4.provenance.accepted);
    CHECK(tensors_identical(r1.provenance.tensor_stderr, r4.provenance.tensor_stderr));
    CHECK(r1.provenance.kind == Provenance::Kind::monte_carlo);
    CHECK(r1.provenance.seed == 42);
    CHECK(r1.provenance.samples == 20000);
    CHECK(r1.provenance.chunks == 8);
    CHECK(r1.provenance.accepted > 0);
}

TEST_CASE("sampled tensor agrees with the closed form on one tube") {
    Link ring;
    ring.components.push_back(make_circle({0, 0, 0}, {0, 0, 1}, 2.0, 512));
    ring.tube_radius = 1.0;
    ring.density = 1.0;

    MCConfig cfg;
    cfg.seed = 20260814;
    cfg.samples = 1000000;
    const InertiaResult mc = mc_inertia(ring, cfg);

    SolidTorusSpec spec;
    spec.major_radius = 2.0;
    spec.minor_radius = 1.0;
    const InertiaResult exact = torus_inertia(spec);

    CHECK(norm(mc.com) < 0.02);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double err = std::abs(mc.tensor(i, j) - exact.tensor(i, j));
            const double band = 4.0 * mc.provenance.tensor_stderr(i, j) +
                                1e-6 * exact.tensor.max_abs();
            CHECK(err <= band);
        }
    CHECK(mc.mass == doctest::Approx(exact.mass).epsilon(5e-3));
}

TEST_CASE("standard error shrinks like the square root of the sample count") {
    Link ring;
    ring.components.push_back(make_circle({0, 0, 0}, {0, 0, 1}, 2.0, 128));
    ring.tube_radius = 1.0;
    ring.density = 1.0;

    MCConfig small;
    small.seed = 5;
    small.samples = 100000;
    MCConfig large;
    large.seed = 5;
    large.samples = 1000000;
    const InertiaResult rs = mc_inertia(ring, small);
    const InertiaResult rl = mc_inertia(ring, large);
    for (int d = 0; d < 3; ++d) {
        const double ratio = rs.provenance.tensor_stderr(d, d) /
                             rl.provenance.tensor_stderr(d, d);
        CHECK(ratio > std::sqrt(10.0) / 2.0);
        CHECK(ratio < std::sqrt(10.0) * 2.0);
    }
}

TEST_CASE("sampled mass reproduces the tube volume of a knotted curve") {
    const Link trefoil = make_torus_knot(2, 3, 2.0, 0.5, 512, 0.2);
    double length = 0.0;
    for (const Component& c : trefoil.components) length += c.arc_length();
    const double expected = kPi * 0.2 * 0.2 * length * trefoil.density;

    MCConfig cfg;
    cfg.seed = 1009;
    cfg.samples = 2000000;
    const InertiaResult r = mc_inertia(trefoil, cfg);
    CHECK(std::abs(r.mass - expected) / expected < 0.01);
}

TEST_CASE("sampling configuration validation") {
    const Link hopf = make_tight_hopf(1.0, 32);
    MCConfig cfg;
    cfg.samples = 0;
    CHECK_THROWS_AS(mc_inertia(hopf, cfg), InvalidParameterError);
    cfg.samples = 10;
    cfg.chunks = 0;
    CHECK_THROWS_AS(mc_inertia(hopf, cfg), InvalidParameterError);
    cfg.chunks = 11;
    CHECK_THROWS_AS(mc_inertia(hopf, cfg), InvalidParameterError);
}

TEST_CASE("a sample set that never hits the tube is reported as degenerate") {
    Link thin;
    thin.components.push_back(make_circle({0, 0, 0}, {0, 0, 1}, 1.0, 64));
    thin.tube_radius = 1e-8;
    thin.density = 1.0;
    MCConfig cfg;
    cfg.seed = 7;
    cfg.samples = 1;
    cfg.chunks = 1;
    CHECK_THROWS_AS(mc_inertia(thin, cfg), DegeneracyError);
}

TEST_CASE("spec helpers validate their arguments") {
    CHECK_THROWS_AS(hopf_tori(0.0), InvalidParameterError);
    CHECK_THROWS_AS(chain_tori(1, 1.0), InvalidParameterError);
    CHECK(hopf_tori(2.0).size() == 2);
    CHECK(chain_tori(5, 1.0).size() == 5);
    CHECK(chain_tori(2, 1.0)[0].center.x == -1.0);
    CHECK(chain_tori(2, 1.0)[1].center.x == 1.0);
}
