#include "knotflux/spectrum_fit.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "knotflux/errors.hpp"

namespace knotflux {

namespace {

void validate_tables(const std::vector<KnotEntry>& knots, const std::vector<StateEntry>& states) {
    std::set<std::string> seen;
    for (const KnotEntry& k : knots) {
        if (!(k.length > 0.0))
            throw InvalidParameterError("knot '" + k.name + "' has nonpositive length");
        if (!seen.insert(k.name).second)
            throw InvalidParameterError("duplicate knot name '" + k.name + "'");
    }
    seen.clear();
    for (const StateEntry& s : states) {
        if (!(s.mass > 0.0))
            throw InvalidParameterError("state '" + s.name + "' has nonpositive mass");
        if (!seen.insert(s.name).second)
            throw InvalidParameterError("duplicate state name '" + s.name + "'");
    }
}

void validate_points(const std::vector<FitPoint>& pairs, std::size_t minimum,
                     const char* what) {
    if (pairs.size() < minimum) {
        std::ostringstream msg;
        msg << what << " needs at least " << minimum << " pairs, got " << pairs.size();
        throw InsufficientDataError(msg.str());
    }
    for (const FitPoint& p : pairs)
        if (!(p.sigma > 0.0)) throw InvalidParameterError("uncertainties must be positive");
}

} // namespace

std::vector<AssignedPair> assign_ordered(std::vector<KnotEntry> knots,
                                         std::vector<StateEntry> states) {
    validate_tables(knots, states);
    if (states.size() > knots.size()) {
        std::ostringstream msg;
        msg << "ordered assignment needs at least as many knots as states (" << states.size()
            << " states, " << knots.size() << " knots)";
        throw AssignmentError(msg.str());
    }
    std::sort(knots.begin(), knots.end(), [](const KnotEntry& a, const KnotEntry& b) {
        return a.length != b.length ? a.length < b.length : a.name < b.name;
    });
    std::sort(states.begin(), states.end(), [](const StateEntry& a, const StateEntry& b) {
        return a.mass != b.mass ? a.mass < b.mass : a.name < b.name;
    });
    std::vector<AssignedPair> out;
    out.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) out.push_back({states[i], knots[i]});
    return out;
}

std::vector<AssignedPair> assign_explicit(
    const std::vector<KnotEntry>& knots, const std::vector<StateEntry>& states,
    const std::map<std::string, std::string>& state_to_knot) {
    validate_tables(knots, states);
    std::map<std::string, const KnotEntry*> by_name;
    for (const KnotEntry& k : knots) by_name[k.name] = &k;

    std::vector<std::string> missing;
    std::vector<AssignedPair> out;
    out.reserve(states.size());
    for (const StateEntry& s : states) {
        const auto mapped = state_to_knot.find(s.name);
        if (mapped == state_to_knot.end()) {
            missing.push_back("state '" + s.name + "' is unmapped");
            continue;
        }
        const auto knot = by_name.find(mapped->second);
        if (knot == by_name.end()) {
            missing.push_back("knot '" + mapped->second + "' is not in the table");
            continue;
        }
        out.push_back({s, *knot->second});
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "assignment map is incomplete: ";
        for (std::size_t i = 0; i < missing.size(); ++i)
            msg << (i ? "; " : "") << missing[i];
        throw AssignmentError(msg.str());
    }
    return out;
}

FitResult fit_scale(const std::vector<FitPoint>& pairs) {
    validate_points(pairs, 2, "proportional fit");

    double num = 0.0;
    double den = 0.0;
    for (const FitPoint& p : pairs) {
        const double w = 1.0 / (p.sigma * p.sigma);
        num += w * p.length * p.energy;
        den += w * p.length * p.length;
    }
    if (!(den > 0.0)) throw SingularFitError("all lengths are zero");

    FitResult r;
    r.lambda = num / den;
    r.dof = pairs.size() - 1;
    r.residuals.reserve(pairs.size());
    for (const FitPoint& p : pairs) {
        const double resid = p.energy - r.lambda * p.length;
        r.residuals.push_back(resid);
        const double w = 1.0 / (p.sigma * p.sigma);
        r.chi2 += w * resid * resid;
    }
    return r;
}

AffineFitResult fit_affine(const std::vector<FitPoint>& pairs) {
    validate_points(pairs, 3, "affine fit");

    double sw = 0.0;
    double swl = 0.0;
    double swe = 0.0;
    double swll = 0.0;
    for (const FitPoint& p : pairs) {
        const double w = 1.0 / (p.sigma * p.sigma);
        sw += w;
        swl += w * p.length;
        swe += w * p.energy;
        swll += w * p.length * p.length;
    }
    const double lbar = swl / sw;
    const double ebar = swe / sw;

    double sxx = 0.0;
    double sxy = 0.0;
    for (const FitPoint& p : pairs) {
        const double w = 1.0 / (p.sigma * p.sigma);
        sxx += w * (p.length - lbar) * (p.length - lbar);
        sxy += w * (p.length - lbar) * (p.energy - ebar);
    }
    if (sxx <= 1e-20 * swll)
        throw SingularFitError("all lengths are equal; the affine design is singular");

    AffineFitResult r;
    r.slope = sxy / sxx;
    r.intercept = ebar - r.slope * lbar;
    r.dof = pairs.size() - 2;
    r.residuals.reserve(pairs.size());
    for (const FitPoint& p : pairs) {
        const double resid = p.energy - (r.intercept + r.slope * p.length);
        r.residuals.push_back(resid);
        const double w = 1.0 / (p.sigma * p.sigma);
        r.chi2 += w * resid * resid;
    }
    return r;
}

std::vector<FitPoint> to_fit_points(const std::vector<AssignedPair>& pairs) {
    std::vector<FitPoint> out;
    out.reserve(pairs.size());
    for (const AssignedPair& p : pairs)
        out.push_back({p.knot.length, p.state.mass, p.state.sigma});
    return out;
}

} // namespace knotflux
