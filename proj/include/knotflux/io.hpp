#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "knotflux/curves.hpp"
#include "knotflux/inertia.hpp"
#include "knotflux/linking.hpp"
#include "knotflux/rotor.hpp"
#include "knotflux/spectrum_fit.hpp"

namespace knotflux {

/// Curve file: { "tube_radius": a, "density": rho,
///               "components": [ [[x,y,z], ...], ... ] }.
/// Components are closed by convention. Numbers round-trip bit-exactly
/// through the shortest-representation encoding used on write.
Link load_link(const std::string& path);
void save_link(const Link& link, const std::string& path);
nlohmann::json link_to_json(const Link& link);
Link link_from_json(const nlohmann::json& j);

/// Torus config: { "tori": [ { "center": [x,y,z], "axis": [x,y,z],
///                             "major_radius": R, "minor_radius": a,
///                             "density": rho }, ... ] }.
std::vector<SolidTorusSpec> load_torus_specs(const std::string& path);
nlohmann::json torus_specs_to_json(const std::vector<SolidTorusSpec>& tori);

/// CSV `name,length`, header optional.
std::vector<KnotEntry> load_knots_csv(const std::string& path);
/// CSV `name,mass_mev,sigma_mev`, header optional; a missing sigma defaults
/// to 1 with a warning on stderr.
std::vector<StateEntry> load_states_csv(const std::string& path);

nlohmann::json inertia_to_json(const InertiaResult& r);
nlohmann::json linking_to_json(const LinkingResult& r);
nlohmann::json levels_to_json(const TopClassification& cls, const std::vector<RotorLevel>& levels);
nlohmann::json fit_to_json(const FitResult& r);
nlohmann::json affine_fit_to_json(const AffineFitResult& r);

/// Plot table `name,length,mass_mev,fitted_mev` for the assigned pairs.
void write_fit_plot_csv(const std::string& path, const std::vector<AssignedPair>& pairs,
                        double lambda);

/// Reproducibility record written alongside every file output as
/// `<output>.manifest.json`. Deliberately timestamp-free: equal manifests
/// must imply equal primary outputs.
struct RunManifest {
    std::string subcommand;
    nlohmann::json parameters = nlohmann::json::object();
    bool has_seed = false;
    std::uint64_t seed = 0;
    std::string version;
    std::vector<std::string> outputs;
};

void write_manifest(const RunManifest& manifest);
std::string manifest_path_for(const std::string& output_path);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace knotflux
