#include "knotflux/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "knotflux/errors.hpp"
#include "knotflux/version.hpp"

namespace knotflux {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stod(s, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == s.size();
}

double require_double(const std::string& s, const std::string& where) {
    double v = 0.0;
    if (!parse_double(s, v)) throw IoError(where + ": cannot parse number '" + s + "'");
    return v;
}

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3)
        throw IoError(where + ": expected a 3-element number array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json mat_to_json(const Mat3& m) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) rows.push_back(json::array({m(i, 0), m(i, 1), m(i, 2)}));
    return rows;
}

void read_csv_rows(const std::string& path, std::vector<std::vector<std::string>>& rows) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        rows.push_back(split_csv_line(t));
    }
}

} // namespace

Link link_from_json(const json& j) {
    if (!j.is_object()) throw IoError("curve file: expected a JSON object");
    if (!j.contains("tube_radius") || !j.contains("density") || !j.contains("components"))
        throw IoError("curve file: needs tube_radius, density and components");
    Link link;
    link.tube_radius = j["tube_radius"].get<double>();
    link.density = j["density"].get<double>();
    const json& comps = j["components"];
    if (!comps.is_array()) throw IoError("curve file: components must be an array");
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        Component c;
        for (const json& v : comps[ci]) {
            c.vertices.push_back(vec_from_json(v, "curve file component " + std::to_string(ci)));
        }
        link.components.push_back(std::move(c));
    }
    link.validate();
    return link;
}

json link_to_json(const Link& link) {
    json comps = json::array();
    for (const Component& c : link.components) {
        json verts = json::array();
        for (const Vec3& v : c.vertices) verts.push_back(vec_to_json(v));
        comps.push_back(std::move(verts));
    }
    return json{{"tube_radius", link.tube_radius},
                {"density", link.density},
                {"components", std::move(comps)}};
}

Link load_link(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw IoError("cannot parse '" + path + "': " + e.what());
    }
    return link_from_json(j);
}

void save_link(const Link& link, const std::string& path) {
    write_text_file(path, link_to_json(link).dump(2) + "\n");
}

std::vector<SolidTorusSpec> load_torus_specs(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw IoError("cannot parse '" + path + "': " + e.what());
    }
    const json* list = nullptr;
    if (j.is_array())
        list = &j;
    else if (j.is_object() && j.contains("tori") && j["tori"].is_array())
        list = &j["tori"];
    else
        throw IoError("torus config: expected {\"tori\": [...]} or a bare array");

    std::vector<SolidTorusSpec> out;
    for (std::size_t i = 0; i < list->size(); ++i) {
        const json& t = (*list)[i];
        const std::string where = "torus " + std::to_string(i);
        if (!t.is_object() || !t.contains("center") || !t.contains("axis") ||
            !t.contains("major_radius") || !t.contains("minor_radius"))
            throw IoError(where + ": needs center, axis, major_radius, minor_radius");
        SolidTorusSpec spec;
        spec.center = vec_from_json(t["center"], where);
        spec.axis = vec_from_json(t["axis"], where);
        spec.major_radius = t["major_radius"].get<double>();
        spec.minor_radius = t["minor_radius"].get<double>();
        spec.density = t.value("density", 1.0);
        out.push_back(spec);
    }
    return out;
}

json torus_specs_to_json(const std::vector<SolidTorusSpec>& tori) {
    json list = json::array();
    for (const SolidTorusSpec& t : tori) {
        list.push_back(json{{"center", vec_to_json(t.center)},
                            {"axis", vec_to_json(t.axis)},
                            {"major_radius", t.major_radius},
                            {"minor_radius", t.minor_radius},
                            {"density", t.density}});
    }
    return json{{"tori", std::move(list)}};
}

std::vector<KnotEntry> load_knots_csv(const std::string& path) {
    std::vector<std::vector<std::string>> rows;
    read_csv_rows(path, rows);
    std::vector<KnotEntry> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& f = rows[i];
        if (f.size() != 2) throw IoError(path + ": knot rows need 2 fields (name,length)");
        double length = 0.0;
        if (!parse_double(f[1], length)) {
            if (i == 0) continue; // header
            throw IoError(path + ": cannot parse length '" + f[1] + "'");
        }
        out.push_back({f[0], length});
    }
    if (out.empty()) throw IoError(path + ": no knot rows");
    return out;
}

std::vector<StateEntry> load_states_csv(const std::string& path) {
    std::vector<std::vector<std::string>> rows;
    read_csv_rows(path, rows);
    std::vector<StateEntry> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& f = rows[i];
        if (f.size() != 2 && f.size() != 3)
            throw IoError(path + ": state rows need 2-3 fields (name,mass_mev[,sigma_mev])");
        double mass = 0.0;
        if (!parse_double(f[1], mass)) {
            if (i == 0) continue; // header
            throw IoError(path + ": cannot parse mass '" + f[1] + "'");
        }
        StateEntry s{f[0], mass, 1.0};
        if (f.size() == 3 && !f[2].empty()) {
            s.sigma = require_double(f[2], path);
        } else {
            std::cerr << "warning: no uncertainty for state '" << s.name
                      << "'; defaulting to 1\n";
        }
        out.push_back(s);
    }
    if (out.empty()) throw IoError(path + ": no state rows");
    return out;
}

json inertia_to_json(const InertiaResult& r) {
    json j{{"mass", r.mass},
           {"com", vec_to_json(r.com)},
           {"tensor", mat_to_json(r.tensor)},
           {"principal_moments",
            json::array({r.principal_moments[0], r.principal_moments[1],
                         r.principal_moments[2]})},
           {"principal_axes",
            json::array({vec_to_json(r.principal_axes.col(0)),
                         vec_to_json(r.principal_axes.col(1)),
                         vec_to_json(r.principal_axes.col(2))})}};
    if (r.provenance.kind == Provenance::Kind::exact) {
        j["provenance"] = json{{"kind", "exact"}};
    } else {
        j["provenance"] = json{{"kind", "monte_carlo"},
                               {"seed", r.provenance.seed},
                               {"samples", r.provenance.samples},
                               {"chunks", r.provenance.chunks},
                               {"accepted", r.provenance.accepted},
                               {"tensor_stderr", mat_to_json(r.provenance.tensor_stderr)}};
    }
    return j;
}

json linking_to_json(const LinkingResult& r) {
    return json{{"raw", r.raw_value},
                {"rounded", r.rounded},
                {"residual", r.residual},
                {"integer_like", r.integer_like}};
}

json levels_to_json(const TopClassification& cls, const std::vector<RotorLevel>& levels) {
    json lv = json::array();
    for (const RotorLevel& l : levels)
        lv.push_back(json{{"J", l.J}, {"K", l.K}, {"energy", l.energy}});
    return json{{"classification",
                 json{{"kind", top_kind_name(cls.kind)},
                      {"moments", json::array({cls.moments[0], cls.moments[1], cls.moments[2]})},
                      {"constants", json{{"A", cls.A}, {"B", cls.B}, {"C", cls.C}}}}},
                {"levels", std::move(lv)}};
}

namespace {

json assignments_to_json(const std::vector<AssignedPair>& assignments) {
    json out = json::array();
    for (const AssignedPair& p : assignments) {
        out.push_back(json{{"state", p.state.name},
                           {"mass_mev", p.state.mass},
                           {"sigma_mev", p.state.sigma},
                           {"knot", p.knot.name},
                           {"length", p.knot.length}});
    }
    return out;
}

} // namespace

json fit_to_json(const FitResult& r) {
    return json{{"lambda", r.lambda},
                {"chi2", r.chi2},
                {"dof", r.dof},
                {"residuals", r.residuals},
                {"assignments", assignments_to_json(r.assignments)}};
}

json affine_fit_to_json(const AffineFitResult& r) {
    return json{{"intercept", r.intercept},
                {"slope", r.slope},
                {"chi2", r.chi2},
                {"dof", r.dof},
                {"residuals", r.residuals},
                {"assignments", assignments_to_json(r.assignments)}};
}

void write_fit_plot_csv(const std::string& path, const std::vector<AssignedPair>& pairs,
                        double lambda) {
    std::ostringstream out;
    out << "name,length,mass_mev,fitted_mev\n";
    char buf[96];
    for (const AssignedPair& p : pairs) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", p.knot.length, p.state.mass,
                      lambda * p.knot.length);
        out << p.state.name << ',' << buf << '\n';
    }
    write_text_file(path, out.str());
}

std::string manifest_path_for(const std::string& output_path) {
    return output_path + ".manifest.json";
}

void write_manifest(const RunManifest& manifest) {
    json j{{"subcommand", manifest.subcommand},
           {"parameters", manifest.parameters},
           {"version", manifest.version.empty() ? std::string(kVersion) : manifest.version},
           {"outputs", manifest.outputs}};
    if (manifest.has_seed) j["seed"] = manifest.seed;
    for (const std::string& out : manifest.outputs)
        write_text_file(manifest_path_for(out), j.dump(2) + "\n");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace knotflux
