// Acceptance gate: one PASS/FAIL line per shipped guarantee, exit 1 on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "knotflux/curves.hpp"
#include "knotflux/inertia.hpp"
#include "knotflux/io.hpp"
#include "knotflux/linking.hpp"
#include "knotflux/phases.hpp"
#include "knotflux/rotor.hpp"
#include "knotflux/spectrum_fit.hpp"
#include "oracles.hpp"

using namespace knotflux;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr std::uint64_t kMcSeed = 20260814;

bool expect(bool ok, const char* what) {
    if (!ok) std::cout << "       check failed: " << what << "\n";
    return ok;
}

double elapsed_ms(const std::chrono::steady_clock::time_point& t0) {
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

// 1. Closed-form tight-pair moments (21, 37.5, 37.5) in pi^2 rho a^5, < 1 ms.
bool exact_tight_pair_moments() {
    bool ok = true;
    composite_inertia(hopf_tori(1.0)); // warm up

    double best_ms = 1e300;
    InertiaResult r;
    for (int rep = 0; rep < 5; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        r = composite_inertia(hopf_tori(1.0));
        best_ms = std::min(best_ms, elapsed_ms(t0));
    }

    const double expected[3] = {21.0, 37.5, 37.5};
    for (int i = 0; i < 3; ++i) {
        const double got = r.principal_moments[i] / kPi2;
        ok &= expect(std::abs(got - expected[i]) / expected[i] < 1e-10,
                     "tight-pair principal moment off by more than 1e-10 relative");
    }
    ok &= expect(best_ms < 1.0, "closed form took 1 ms or longer");
    std::printf("       moments/pi^2 = (%.12f, %.12f, %.12f), %.3f ms\n",
                r.principal_moments[0] / kPi2, r.principal_moments[1] / kPi2,
                r.principal_moments[2] / kPi2, best_ms);
    return ok;
}

// 2. Sampled tensor matches the closed form within 3 standard errors and 1%.
bool sampled_tensor_agreement() {
    bool ok = true;
    const Link hopf = make_tight_hopf(1.0);
    MCConfig cfg;
    cfg.seed = kMcSeed;
    cfg.samples = 10000000;

    const auto t0 = std::chrono::steady_clock::now();
    const InertiaResult mc = mc_inertia(hopf, cfg, 1);
    const double ms = elapsed_ms(t0);

    const InertiaResult exact = composite_inertia(hopf_tori(1.0));
    const double scale = exact.tensor.max_abs();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double err = std::abs(mc.tensor(i, j) - exact.tensor(i, j));
            const double se = mc.provenance.tensor_stderr(i, j);
            ok &= expect(err <= 3.0 * se, "component outside 3 standard errors");
            const double denom = std::abs(exact.tensor(i, j)) > 0.0
                                     ? std::abs(exact.tensor(i, j))
                                     : scale;
            ok &= expect(err <= 0.01 * denom, "component off by more than 1%");
        }
    ok &= expect(ms < 60000.0, "10^7 samples took 60 s or longer single-threaded");
    std::printf("       N=1e7 seed=%llu: diag/pi^2 = (%.4f, %.4f, %.4f), %.0f ms\n",
                static_cast<unsigned long long>(cfg.seed), mc.tensor(0, 0) / kPi2,
                mc.tensor(1, 1) / kPi2, mc.tensor(2, 2) / kPi2, ms);
    return ok;
}

// 3. Identical (seed, N, chunks) gives identical tensors on any thread count.
bool thread_schedule_independence() {
    bool ok = true;
    const Link hopf = make_tight_hopf(1.0, 128);
    MCConfig cfg;
    cfg.seed = 7;
    cfg.samples = 1000000;
    const InertiaResult t1 = mc_inertia(hopf, cfg, 1);
    const InertiaResult t3 = mc_inertia(hopf, cfg, 3);
    const InertiaResult t8 = mc_inertia(hopf, cfg, 8);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double s = std::max(1.0, std::abs(t1.tensor(i, j)));
            ok &= expect(std::abs(t1.tensor(i, j) - t3.tensor(i, j)) <= 1e-15 * s,
                         "1 vs 3 threads differ beyond 1e-15");
            ok &= expect(std::abs(t1.tensor(i, j) - t8.tensor(i, j)) <= 1e-15 * s,
                         "1 vs 8 threads differ beyond 1e-15");
        }
    ok &= expect(t1.provenance.accepted == t3.provenance.accepted &&
                     t1.provenance.accepted == t8.provenance.accepted,
                 "accepted counts differ across thread counts");
    return ok;
}

// 4. Even chains classify prolate-symmetric, the 3-chain is asymmetric.
bool chain_classification() {
    bool ok = true;
    for (std::size_t k : {std::size_t{2}, std::size_t{4}, std::size_t{6}}) {
        const auto policy = k == 2 ? OverlapPolicy::forbid : OverlapPolicy::allow;
        const InertiaResult r = composite_inertia(chain_tori(k, 1.0), policy);
        const double gap =
            (r.principal_moments[2] - r.principal_moments[1]) / r.principal_moments[2];
        ok &= expect(gap < 1e-9, "even chain degenerate-pair gap exceeds 1e-9");
        const TopClassification cls = classify_top(r.principal_moments);
        ok &= expect(cls.kind == TopKind::prolate_symmetric,
                     "even chain did not classify prolate-symmetric");
    }
    const InertiaResult odd = composite_inertia(chain_tori(3, 1.0), OverlapPolicy::allow);
    ok &= expect(classify_top(odd.principal_moments).kind == TopKind::asymmetric,
                 "3-chain did not classify asymmetric");
    return ok;
}

// 5. Linking numbers land on integers; the (2,4) pair agrees with a
//    signed-crossing count in projection.
bool linking_exactness() {
    bool ok = true;
    const Link hopf = make_tight_hopf(1.0);
    const LinkingResult lk_hopf = gauss_linking(hopf.components[0], hopf.components[1]);
    ok &= expect(std::abs(lk_hopf.rounded) == 1 && lk_hopf.residual < 1e-9,
                 "tight pair linking is not +-1");

    const Component far_a = make_circle({0, 0, 0}, {0, 0, 1}, 1.0, 256);
    const Component far_b = make_circle({10, 0, 0}, {0, 0, 1}, 1.0, 256);
    const LinkingResult lk_split = gauss_linking(far_a, far_b);
    ok &= expect(lk_split.rounded == 0 && lk_split.residual < 1e-9,
                 "split circles linking is not 0");

    const Link borr = make_borromean(2.0, 1.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            const LinkingResult lk = gauss_linking(borr.components[i], borr.components[j]);
            ok &= expect(lk.rounded == 0 && lk.residual < 1e-9,
                         "a pairwise-unlinked ring pair reports nonzero linking");
        }

    const Link tl = make_torus_knot(2, 4, 2.0, 0.5, 512, 0.1);
    const LinkingResult lk_tl = gauss_linking(tl.components[0], tl.components[1]);
    ok &= expect(std::abs(lk_tl.rounded) == 2 && lk_tl.residual < 1e-9,
                 "(2,4) torus-link pair linking is not +-2");
    const auto counted = oracles::signed_crossing_linking(tl.components[0], tl.components[1]);
    ok &= expect(counted.has_value(), "crossing count found no generic projection");
    if (counted)
        ok &= expect(std::abs(*counted - static_cast<double>(lk_tl.rounded)) < 1e-9,
                     "crossing count disagrees with the solid-angle sum");
    return ok;
}

// 6. Junction current is (1, 0, 1)*j0 at flux products {0, 1/2, 1} and
//    2-periodic in the product across random draws.
bool junction_markers_and_periodicity() {
    bool ok = true;
    FluxConfig cfg;
    cfg.phi0 = 1.0;
    cfg.j0 = 1.0;
    cfg.phi2 = 1.0;

    const double marks[3] = {0.0, 0.5, 1.0};
    const double want[3] = {1.0, 0.0, 1.0};
    for (int i = 0; i < 3; ++i) {
        cfg.phi1 = marks[i];
        ok &= expect(std::abs(josephson_max_current(cfg) - want[i]) <= 1e-15,
                     "marker value off beyond 1e-15");
    }

    std::mt19937_64 gen(1234u);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    cfg.j0 = 1.3;
    for (int trial = 0; trial < 100; ++trial) {
        cfg.phi1 = dist(gen);
        const double base = josephson_max_current(cfg);
        FluxConfig shifted = cfg;
        shifted.phi1 = cfg.phi1 + 2.0;
        ok &= expect(std::abs(josephson_max_current(shifted) - base) <= 1e-12 * cfg.j0,
                     "period-2 shift moved the current beyond 1e-12 j0");
    }
    return ok;
}

// 7. Second-order phase is homogeneous in each flux across random draws.
bool second_order_bilinearity() {
    bool ok = true;
    std::mt19937_64 gen(4321u);
    std::uniform_real_distribution<double> flux(-3.0, 3.0);
    std::uniform_real_distribution<double> factor(-4.0, 4.0);
    std::uniform_real_distribution<double> coupling(0.5, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        FluxConfig cfg;
        cfg.phi1 = flux(gen);
        cfg.phi2 = flux(gen);
        cfg.kappa = coupling(gen);
        cfg.topo_coeff = (trial % 2 == 0) ? 1 : -1;
        const double a = factor(gen);
        const double base = ab_phase_second_order(cfg);
        FluxConfig scaled = cfg;
        scaled.phi1 = a * cfg.phi1;
        const double got = ab_phase_second_order(scaled);
        const double scale = std::max(std::abs(a * base), 1e-300);
        ok &= expect(std::abs(got - a * base) <= 1e-12 * scale,
                     "scaling the first flux is not homogeneous to 1e-12");
    }
    return ok;
}

// 8. Proportional fit: exact recovery on proportional data, orthogonal
//    residuals on random instances, and an end-to-end run on the shipped
//    tables.
bool fit_pipeline() {
    bool ok = true;

    std::vector<FitPoint> points;
    for (double l : {1.0, 2.0, 3.0, 4.0, 5.0, 6.0}) points.push_back({l, 0.5 * l, 1.0});
    const FitResult exact = fit_scale(points);
    ok &= expect(std::abs(exact.lambda - 0.5) <= 1e-12 * 0.5,
                 "proportional data did not recover the ratio to 1e-12");
    ok &= expect(exact.chi2 < 1e-20, "proportional data left chi2 >= 1e-20");

    std::mt19937_64 gen(987u);
    std::uniform_real_distribution<double> val(1.0, 10.0);
    std::uniform_real_distribution<double> sig(0.1, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<FitPoint> pts;
        const int n = 3 + static_cast<int>(val(gen)) % 6;
        for (int i = 0; i < n; ++i) pts.push_back({val(gen), val(gen), sig(gen)});
        const FitResult r = fit_scale(pts);
        double proj = 0.0;
        double scale = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double w = 1.0 / (pts[i].sigma * pts[i].sigma);
            proj += w * pts[i].length * r.residuals[i];
            scale += w * pts[i].length *
                     (std::abs(pts[i].energy) + std::abs(r.lambda) * pts[i].length);
        }
        ok &= expect(std::abs(proj) < 1e-10 * scale,
                     "weighted residuals not orthogonal to the lengths");
    }

    const std::string data_dir = KNOTFLUX_DATA_DIR;
    const auto knots = load_knots_csv(data_dir + "/knot_lengths.csv");
    const auto states = load_states_csv(data_dir + "/f0_states.csv");
    const auto pairs = assign_ordered(knots, states);
    const FitResult table_fit = fit_scale(to_fit_points(pairs));
    ok &= expect(std::isfinite(table_fit.lambda) && table_fit.lambda > 0.0,
                 "table fit ratio is not finite and positive");
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        ok &= expect(pairs[i].state.mass >= pairs[i - 1].state.mass,
                     "assignments not monotone in mass");
        ok &= expect(pairs[i].knot.length >= pairs[i - 1].knot.length,
                     "assignments not monotone in length");
    }

    namespace fs = std::filesystem;
    const fs::path dir = fs::current_path() / "acceptance_scratch";
    fs::create_directories(dir);
    const std::string plot = (dir / "fit_plot.csv").string();
    write_fit_plot_csv(plot, pairs, table_fit.lambda);
    std::ifstream in(plot);
    std::string line;
    std::size_t rows = 0;
    bool header_ok = false;
    while (std::getline(in, line)) {
        if (rows == 0) header_ok = line == "name,length,mass_mev,fitted_mev";
        ++rows;
    }
    ok &= expect(header_ok, "plot CSV header is wrong");
    ok &= expect(rows == pairs.size() + 1, "plot CSV row count is wrong");
    std::printf("       table fit: lambda = %.6g MeV per unit length, chi2 = %.6g\n",
                table_fit.lambda, table_fit.chi2);
    return ok;
}

// 9. Level ladder of the tight-pair moments: energy monotone in |K| within
//    each J <= 3, and a power-of-two moment scaling rescales every level
//    bitwise.
bool rotor_ladder() {
    bool ok = true;
    const InertiaResult pair = composite_inertia(hopf_tori(1.0));
    const TopClassification cls = classify_top(pair.principal_moments);
    ok &= expect(cls.kind == TopKind::prolate_symmetric,
                 "tight-pair moments did not classify prolate-symmetric");

    const auto levels = symmetric_top_levels(cls, 3);
    ok &= expect(levels.size() == 16, "level count for J <= 3 is wrong");
    for (unsigned J = 0; J <= 3; ++J) {
        double last = -1.0;
        for (int absk = 0; absk <= static_cast<int>(J); ++absk) {
            for (const RotorLevel& l : levels) {
                if (l.J != J || std::abs(l.K) != absk) continue;
                ok &= expect(l.energy >= last, "energy not monotone in |K| within a J");
                last = l.energy;
            }
        }
    }

    const double s = 2.0;
    const std::array<double, 3> scaled{pair.principal_moments[0] * s,
                                       pair.principal_moments[1] * s,
                                       pair.principal_moments[2] * s};
    const auto lv_scaled = symmetric_top_levels(classify_top(scaled), 3);
    ok &= expect(lv_scaled.size() == levels.size(), "scaled ladder has a different size");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        ok &= expect(lv_scaled[i].J == levels[i].J && lv_scaled[i].K == levels[i].K,
                     "scaled ladder ordering changed");
        ok &= expect(lv_scaled[i].energy == levels[i].energy / s,
                     "scaled energy is not exactly the original over s");
    }
    return ok;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        bool (*fn)();
    };
    const Criterion criteria[] = {
        {"exact tight-pair composite moments (21, 37.5, 37.5) pi^2 rho a^5 under 1 ms",
         exact_tight_pair_moments},
        {"sampled tensor within 3 standard errors and 1% of the closed form",
         sampled_tensor_agreement},
        {"sampled tensor independent of thread count", thread_schedule_independence},
        {"even chains prolate-symmetric, 3-chain asymmetric", chain_classification},
        {"linking integers for pair/split/three-ring/(2,4) with crossing cross-check",
         linking_exactness},
        {"junction current markers and flux-product periodicity",
         junction_markers_and_periodicity},
        {"second-order phase bilinearity over random draws", second_order_bilinearity},
        {"proportional fit exactness, orthogonality and table run", fit_pipeline},
        {"rotor ladder |K| monotonicity and exact 1/s scaling", rotor_ladder},
    };

    int failed = 0;
    int index = 0;
    for (const Criterion& c : criteria) {
        ++index;
        bool ok = false;
        try {
            ok = c.fn();
        } catch (const std::exception& e) {
            std::cout << "       unexpected error: " << e.what() << "\n";
            ok = false;
        }
        std::cout << (ok ? "PASS" : "FAIL") << "  " << index << ". " << c.name << "\n";
        if (!ok) ++failed;
    }

    std::cout << (failed == 0 ? "all criteria passed"
                              : std::to_string(failed) + " criteria failed")
              << " (" << (9 - failed) << "/9)\n";
    return failed == 0 ? 0 : 1;
}
