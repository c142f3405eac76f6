#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "knotflux/errors.hpp"
#include "knotflux/inertia.hpp"
#include "knotflux/io.hpp"
#include "knotflux/linking.hpp"
#include "knotflux/phases.hpp"
#include "knotflux/rotor.hpp"
#include "knotflux/spectrum_fit.hpp"
#include "knotflux/version.hpp"

namespace {

using nlohmann::json;

/// Print to stdout, or write to `out` plus a manifest sidecar per output file.
void deliver(const json& result, const std::string& out, const std::string& subcommand,
             const json& parameters, bool has_seed = false, std::uint64_t seed = 0,
             const std::vector<std::string>& extra_outputs = {}) {
    if (out.empty() && extra_outputs.empty()) {
        std::cout << result.dump(2) << "\n";
        return;
    }
    knotflux::RunManifest manifest;
    manifest.subcommand = subcommand;
    manifest.parameters = parameters;
    manifest.has_seed = has_seed;
    manifest.seed = seed;
    manifest.version = knotflux::kVersion;
    if (!out.empty()) {
        knotflux::write_text_file(out, result.dump(2) + "\n");
        manifest.outputs.push_back(out);
    } else {
        std::cout << result.dump(2) << "\n";
    }
    for (const std::string& path : extra_outputs) manifest.outputs.push_back(path);
    knotflux::write_manifest(manifest);
}

json normalization_block(const knotflux::InertiaResult& r, double rho, double a) {
    const double unit = std::numbers::pi * std::numbers::pi * rho * a * a * a * a * a;
    json block{{"unit", "pi2-rho-a5"}, {"unit_value", unit}};
    json tensor = json::array();
    for (int i = 0; i < 3; ++i)
        tensor.push_back(json::array(
            {r.tensor(i, 0) / unit, r.tensor(i, 1) / unit, r.tensor(i, 2) / unit}));
    block["tensor"] = std::move(tensor);
    block["principal_moments"] =
        json::array({r.principal_moments[0] / unit, r.principal_moments[1] / unit,
                     r.principal_moments[2] / unit});
    if (r.provenance.kind == knotflux::Provenance::Kind::monte_carlo) {
        json se = json::array();
        for (int i = 0; i < 3; ++i)
            se.push_back(json::array({r.provenance.tensor_stderr(i, 0) / unit,
                                      r.provenance.tensor_stderr(i, 1) / unit,
                                      r.provenance.tensor_stderr(i, 2) / unit}));
        block["tensor_stderr"] = std::move(se);
    }
    return block;
}

std::string levels_csv(const std::vector<knotflux::RotorLevel>& levels) {
    std::ostringstream out;
    out << "J,K,energy\n";
    char buf[40];
    for (const knotflux::RotorLevel& l : levels) {
        std::snprintf(buf, sizeof(buf), "%.17g", l.energy);
        out << l.J << ',' << l.K << ',' << buf << '\n';
    }
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Knotted flux-tube toolkit: curve generators, Gauss linking, interference "
                 "phases, tube inertia, rotor levels and length-mass fits"};
    app.set_version_flag("--version", knotflux::kVersion);
    app.require_subcommand(1);

    try {
        // generate
        auto* gen = app.add_subcommand("generate", "Write canonical curve configurations");
        gen->require_subcommand(1);
        std::size_t g_n = 512;
        double g_density = 1.0;
        std::string g_out;
        for (const char* name : {"hopf", "chain", "borromean", "circle", "torus-knot"}) {
            auto* sub = gen->add_subcommand(name);
            sub->add_option("--n", g_n, "Vertices per component")->capture_default_str();
            sub->add_option("--density", g_density, "Mass density")->capture_default_str();
            sub->add_option("--out", g_out, "Output curve file (JSON)");
        }

        auto* gen_hopf = gen->get_subcommand("hopf");
        double hopf_a = 1.0;
        gen_hopf->description("Two interlocked rings with tangent tubes");
        gen_hopf->add_option("--a", hopf_a, "Tube radius")->capture_default_str();
        gen_hopf->callback([&] {
            const knotflux::Link link = knotflux::make_tight_hopf(hopf_a, g_n, g_density);
            json params{{"a", hopf_a}, {"n", g_n}, {"density", g_density}};
            if (g_out.empty()) {
                deliver(knotflux::link_to_json(link), "", "generate hopf", params);
            } else {
                knotflux::save_link(link, g_out);
                knotflux::RunManifest m{"generate hopf", params, false, 0, knotflux::kVersion,
                                        {g_out}};
                knotflux::write_manifest(m);
            }
        });

        auto* gen_chain = gen->get_subcommand("chain");
        std::size_t chain_k = 2;
        double chain_a = 1.0;
        gen_chain->description("Straight chain of interlocked rings");
        gen_chain->add_option("--k", chain_k, "Number of rings")->required();
        gen_chain->add_option("--a", chain_a, "Tube radius")->capture_default_str();
        gen_chain->callback([&] {
            const knotflux::Link link = knotflux::make_chain(chain_k, chain_a, g_n, g_density);
            json params{{"k", chain_k}, {"a", chain_a}, {"n", g_n}, {"density", g_density}};
            if (g_out.empty()) {
                deliver(knotflux::link_to_json(link), "", "generate chain", params);
            } else {
                knotflux::save_link(link, g_out);
                knotflux::RunManifest m{"generate chain", params, false, 0, knotflux::kVersion,
                                        {g_out}};
                knotflux::write_manifest(m);
            }
        });

        auto* gen_borr = gen->get_subcommand("borromean");
        double borr_r1 = 2.0;
        double borr_r2 = 1.0;
        double borr_tube = -1.0;
        gen_borr->description("Three pairwise-unlinked elliptical rings");
        gen_borr->add_option("--r1", borr_r1, "First semi-axis")->capture_default_str();
        gen_borr->add_option("--r2", borr_r2, "Second semi-axis")->capture_default_str();
        gen_borr->add_option("--tube", borr_tube, "Tube radius (default min(r1,r2)/5)");
        gen_borr->callback([&] {
            const knotflux::Link link =
                knotflux::make_borromean(borr_r1, borr_r2, g_n, borr_tube, g_density);
            json params{{"r1", borr_r1},
                        {"r2", borr_r2},
                        {"tube", link.tube_radius},
                        {"n", g_n},
                        {"density", g_density}};
            if (g_out.empty()) {
                deliver(knotflux::link_to_json(link), "", "generate borromean", params);
            } else {
                knotflux::save_link(link, g_out);
                knotflux::RunManifest m{"generate borromean", params, false, 0,
                                        knotflux::kVersion, {g_out}};
                knotflux::write_manifest(m);
            }
        });

        auto* gen_circle = gen->get_subcommand("circle");
        std::vector<double> circ_center{0.0, 0.0, 0.0};
        std::vector<double> circ_normal{0.0, 0.0, 1.0};
        double circ_radius = 1.0;
        double circ_phase = 0.0;
        double circ_tube = -1.0;
        gen_circle->description("Single circular ring");
        gen_circle->add_option("--center", circ_center, "Center x y z")->expected(3);
        gen_circle->add_option("--normal", circ_normal, "Plane normal x y z")->expected(3);
        gen_circle->add_option("--radius", circ_radius, "Circle radius")->capture_default_str();
        gen_circle->add_option("--phase", circ_phase, "Angular offset of the first vertex");
        gen_circle->add_option("--tube", circ_tube, "Tube radius (default radius/10)");
        gen_circle->callback([&] {
            knotflux::Link link;
            link.tube_radius = circ_tube > 0.0 ? circ_tube : circ_radius / 10.0;
            link.density = g_density;
            link.components.push_back(knotflux::make_circle(
                {circ_center[0], circ_center[1], circ_center[2]},
                {circ_normal[0], circ_normal[1], circ_normal[2]}, circ_radius, g_n, circ_phase));
            link.validate();
            json params{{"center", circ_center}, {"normal", circ_normal},
                        {"radius", circ_radius}, {"phase", circ_phase},
                        {"tube", link.tube_radius}, {"n", g_n},
                        {"density", g_density}};
            if (g_out.empty()) {
                deliver(knotflux::link_to_json(link), "", "generate circle", params);
            } else {
                knotflux::save_link(link, g_out);
                knotflux::RunManifest m{"generate circle", params, false, 0, knotflux::kVersion,
                                        {g_out}};
                knotflux::write_manifest(m);
            }
        });

        auto* gen_tk = gen->get_subcommand("torus-knot");
        unsigned tk_p = 2;
        unsigned tk_q = 3;
        double tk_R = 2.0;
        double tk_r = 0.5;
        double tk_tube = 0.1;
        gen_tk->description("(p,q) curve on a torus; gcd(p,q) components");
        gen_tk->add_option("--p", tk_p, "Windings around the symmetry axis")->required();
        gen_tk->add_option("--q", tk_q, "Windings around the tube")->required();
        gen_tk->add_option("--R", tk_R, "Torus major radius")->capture_default_str();
        gen_tk->add_option("--r", tk_r, "Torus tube-of-revolution radius")->capture_default_str();
        gen_tk->add_option("--tube", tk_tube, "Tube radius of the output link")
            ->capture_default_str();
        gen_tk->callback([&] {
            const knotflux::Link link =
                knotflux::make_torus_knot(tk_p, tk_q, tk_R, tk_r, g_n, tk_tube, g_density);
            json params{{"p", tk_p}, {"q", tk_q}, {"R", tk_R}, {"r", tk_r},
                        {"tube", tk_tube}, {"n", g_n}, {"density", g_density}};
            if (g_out.empty()) {
                deliver(knotflux::link_to_json(link), "", "generate torus-knot", params);
            } else {
                knotflux::save_link(link, g_out);
                knotflux::RunManifest m{"generate torus-knot", params, false, 0,
                                        knotflux::kVersion, {g_out}};
                knotflux::write_manifest(m);
            }
        });

        // link
        auto* link_cmd = app.add_subcommand("link", "Gauss linking number of a component pair");
        std::string link_file;
        std::vector<std::size_t> link_pair{0, 1};
        std::string link_out;
        link_cmd->add_option("curve-file", link_file, "Curve file (JSON)")->required();
        link_cmd->add_option("--pair", link_pair, "Component indices i j")->expected(2);
        link_cmd->add_option("--out", link_out, "Output file (JSON)");
        link_cmd->callback([&] {
            const knotflux::Link link = knotflux::load_link(link_file);
            if (link_pair[0] >= link.components.size() ||
                link_pair[1] >= link.components.size() || link_pair[0] == link_pair[1])
                throw knotflux::InvalidParameterError(
                    "--pair must name two distinct component indices");
            const knotflux::LinkingResult r = knotflux::gauss_linking(
                link.components[link_pair[0]], link.components[link_pair[1]]);
            deliver(knotflux::linking_to_json(r), link_out, "link",
                    json{{"curve_file", link_file}, {"pair", link_pair}});
        });

        // phase
        auto* phase = app.add_subcommand("phase", "Interference phases and junction current");
        phase->require_subcommand(1);
        knotflux::FluxConfig flux;
        std::int64_t phase_linking = 1;
        std::string phase_out;
        for (const char* name : {"ab", "ab2", "josephson"}) {
            auto* sub = phase->add_subcommand(name);
            sub->add_option("--phi1", flux.phi1, "Flux through the first tube");
            sub->add_option("--phi2", flux.phi2, "Flux through the second tube");
            sub->add_option("--kappa", flux.kappa, "Coupling e/(hbar c)")->capture_default_str();
            sub->add_option("--out", phase_out, "Output file (JSON)");
        }
        auto* phase_ab = phase->get_subcommand("ab");
        phase_ab->description("First-order phase kappa * linking * phi1");
        phase_ab->add_option("--linking", phase_linking, "Linking number")
            ->capture_default_str();
        phase_ab->callback([&] {
            const double value = knotflux::ab_phase_first_order(flux, phase_linking);
            deliver(json{{"phase", value}}, phase_out, "phase ab",
                    json{{"phi1", flux.phi1}, {"kappa", flux.kappa},
                         {"linking", phase_linking}});
        });
        auto* phase_ab2 = phase->get_subcommand("ab2");
        phase_ab2->description("Second-order phase topo_coeff * kappa^2 * phi1 * phi2");
        phase_ab2->add_option("--topo-coeff", flux.topo_coeff, "Integer topological coefficient")
            ->capture_default_str();
        phase_ab2->callback([&] {
            const double value = knotflux::ab_phase_second_order(flux);
            deliver(json{{"phase", value}}, phase_out, "phase ab2",
                    json{{"phi1", flux.phi1}, {"phi2", flux.phi2}, {"kappa", flux.kappa},
                         {"topo_coeff", flux.topo_coeff}});
        });
        auto* phase_jj = phase->get_subcommand("josephson");
        phase_jj->description("Maximum junction current j0 |cos(pi phi1 phi2 / phi0)|");
        phase_jj->add_option("--phi0", flux.phi0, "Fluxoid")->capture_default_str();
        phase_jj->add_option("--j0", flux.j0, "Junction amplitude")->capture_default_str();
        phase_jj->add_flag("--phi0-squared", flux.josephson_phi0_squared,
                           "Divide by phi0^2 instead of phi0");
        phase_jj->callback([&] {
            const double value = knotflux::josephson_max_current(flux);
            deliver(json{{"max_current", value}}, phase_out, "phase josephson",
                    json{{"phi1", flux.phi1}, {"phi2", flux.phi2}, {"phi0", flux.phi0},
                         {"j0", flux.j0}, {"phi0_squared", flux.josephson_phi0_squared}});
        });

        // inertia
        auto* inertia = app.add_subcommand("inertia", "Mass, center of mass and inertia tensor");
        std::string in_file;
        std::string in_config;
        bool in_mc = false;
        bool in_exact = false;
        bool in_allow_overlap = false;
        std::uint64_t in_seed = 0;
        std::uint64_t in_samples = 1000000;
        std::uint64_t in_chunks = 64;
        unsigned in_threads = 0;
        std::string in_normalize;
        std::string in_out;
        inertia->add_option("curve-file", in_file, "Curve file (JSON) for --mc");
        inertia->add_flag("--mc", in_mc, "Monte Carlo over the tube volume");
        inertia->add_flag("--exact", in_exact, "Closed-form sum over solid tori");
        inertia->add_option("--config", in_config, "Torus config (JSON) for --exact");
        inertia->add_flag("--allow-overlap", in_allow_overlap,
                          "Accept overlapping tori in --exact (mass double counts)");
        inertia->add_option("--seed", in_seed, "RNG seed")->capture_default_str();
        inertia->add_option("--samples", in_samples, "Sample count")->capture_default_str();
        inertia->add_option("--chunks", in_chunks, "Fixed chunk partition")
            ->capture_default_str();
        inertia->add_option("--threads", in_threads, "Worker threads (0 = hardware)")
            ->envname("KNOTFLUX_THREADS");
        inertia->add_option("--normalize", in_normalize, "Report tensor in the given unit")
            ->check(CLI::IsMember({"pi2-rho-a5"}));
        inertia->add_option("--out", in_out, "Output file (JSON)");
        inertia->callback([&] {
            if (in_mc == in_exact)
                throw CLI::RequiredError("exactly one of --mc / --exact");
            knotflux::InertiaResult r;
            json params;
            double rho = 1.0;
            double a = 1.0;
            if (in_mc) {
                if (in_file.empty()) throw CLI::RequiredError("curve-file (with --mc)");
                const knotflux::Link link = knotflux::load_link(in_file);
                r = knotflux::mc_inertia(link, {in_seed, in_samples, in_chunks}, in_threads);
                rho = link.density;
                a = link.tube_radius;
                params = json{{"curve_file", in_file}, {"mode", "mc"},      {"seed", in_seed},
                              {"samples", in_samples}, {"chunks", in_chunks}};
            } else {
                if (in_config.empty()) throw CLI::RequiredError("--config (with --exact)");
                const auto tori = knotflux::load_torus_specs(in_config);
                r = knotflux::composite_inertia(tori, in_allow_overlap
                                                          ? knotflux::OverlapPolicy::allow
                                                          : knotflux::OverlapPolicy::forbid);
                if (!tori.empty()) {
                    rho = tori.front().density;
                    a = tori.front().minor_radius;
                }
                params = json{{"config", in_config},
                              {"mode", "exact"},
                              {"allow_overlap", in_allow_overlap}};
            }
            json out = knotflux::inertia_to_json(r);
            if (!in_normalize.empty()) out["normalized"] = normalization_block(r, rho, a);
            deliver(out, in_out, "inertia", params, in_mc, in_seed);
        });

        // rotor
        auto* rotor = app.add_subcommand("rotor", "Rigid-top classification and level ladder");
        std::vector<double> rot_moments;
        unsigned rot_jmax = 3;
        double rot_tol = 1e-9;
        double rot_hbar = 1.0;
        std::string rot_format = "json";
        std::string rot_out;
        rotor->add_option("--moments", rot_moments, "Principal moments I1 I2 I3")
            ->expected(3)
            ->required();
        rotor->add_option("--jmax", rot_jmax, "Highest J")->capture_default_str();
        rotor->add_option("--tol", rot_tol, "Relative degeneracy tolerance")
            ->capture_default_str();
        rotor->add_option("--hbar", rot_hbar, "hbar in output units")->capture_default_str();
        rotor->add_option("--format", rot_format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        rotor->add_option("--out", rot_out, "Output file");
        rotor->callback([&] {
            const knotflux::TopClassification cls = knotflux::classify_top(
                {rot_moments[0], rot_moments[1], rot_moments[2]}, rot_tol, rot_hbar);
            const auto levels = knotflux::symmetric_top_levels(cls, rot_jmax);
            const json params{{"moments", rot_moments}, {"jmax", rot_jmax},
                              {"tol", rot_tol},         {"hbar", rot_hbar},
                              {"format", rot_format}};
            if (rot_format == "csv") {
                const std::string table = levels_csv(levels);
                if (rot_out.empty()) {
                    std::cout << table;
                } else {
                    knotflux::write_text_file(rot_out, table);
                    knotflux::RunManifest m{"rotor", params, false, 0, knotflux::kVersion,
                                            {rot_out}};
                    knotflux::write_manifest(m);
                }
            } else {
                deliver(knotflux::levels_to_json(cls, levels), rot_out, "rotor", params);
            }
        });

        // fit
        auto* fit = app.add_subcommand("fit", "Scale fit of knot lengths to state masses");
        std::string fit_knots;
        std::string fit_states;
        std::string fit_assign;
        std::string fit_plot;
        std::string fit_out;
        bool fit_affine_flag = false;
        fit->add_option("--knots", fit_knots, "Knot table CSV (name,length)")->required();
        fit->add_option("--states", fit_states, "State table CSV (name,mass_mev,sigma_mev)")
            ->required();
        fit->add_option("--assign", fit_assign, "Explicit state->knot map (JSON object)");
        fit->add_flag("--affine", fit_affine_flag, "Also fit an intercept");
        fit->add_option("--plot", fit_plot, "Plot-ready CSV (name,length,mass,fitted)");
        fit->add_option("--out", fit_out, "Output file (JSON)");
        fit->callback([&] {
            const auto knots = knotflux::load_knots_csv(fit_knots);
            const auto states = knotflux::load_states_csv(fit_states);
            std::vector<knotflux::AssignedPair> pairs;
            if (fit_assign.empty()) {
                pairs = knotflux::assign_ordered(knots, states);
            } else {
                json map_json;
                try {
                    map_json = json::parse(knotflux::read_text_file(fit_assign));
                } catch (const json::exception& e) {
                    throw knotflux::IoError(std::string("cannot parse assignment map: ") +
                                            e.what());
                }
                if (!map_json.is_object())
                    throw knotflux::IoError("assignment map must be a JSON object");
                std::map<std::string, std::string> name_map;
                for (const auto& [k, v] : map_json.items())
                    name_map[k] = v.get<std::string>();
                pairs = knotflux::assign_explicit(knots, states, name_map);
            }

            knotflux::FitResult scale = knotflux::fit_scale(knotflux::to_fit_points(pairs));
            scale.assignments = pairs;
            json out{{"scale", knotflux::fit_to_json(scale)}};
            if (fit_affine_flag) {
                knotflux::AffineFitResult affine =
                    knotflux::fit_affine(knotflux::to_fit_points(pairs));
                affine.assignments = pairs;
                out["affine"] = knotflux::affine_fit_to_json(affine);
            }
            std::vector<std::string> extra;
            if (!fit_plot.empty()) {
                knotflux::write_fit_plot_csv(fit_plot, pairs, scale.lambda);
                extra.push_back(fit_plot);
            }
            deliver(out, fit_out, "fit",
                    json{{"knots", fit_knots},
                         {"states", fit_states},
                         {"assign", fit_assign},
                         {"affine", fit_affine_flag},
                         {"plot", fit_plot}},
                    false, 0, extra);
        });

        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const knotflux::Error& e) {
        std::cerr << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
