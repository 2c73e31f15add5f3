#include "swme/scenario_io.hpp"

#include <stdexcept>

#ifndef SWME_GIT_DESCRIBE
#define SWME_GIT_DESCRIBE "unknown"
#endif

namespace swme {

using nlohmann::json;

namespace {

const char* topography_name(TopographyKind k)
{
    switch (k) {
    case TopographyKind::Flat: return "flat";
    case TopographyKind::Parabola: return "parabola";
    case TopographyKind::CosineBump: return "cosine_bump";
    }
    return "flat";
}

TopographyKind parse_topography(const std::string& s)
{
    if (s == "flat")
        return TopographyKind::Flat;
    if (s == "parabola")
        return TopographyKind::Parabola;
    if (s == "cosine_bump")
        return TopographyKind::CosineBump;
    throw std::invalid_argument("unknown topography '" + s + "'");
}

const char* initial_name(InitialKind k)
{
    switch (k) {
    case InitialKind::LakeAtRest: return "lake_at_rest";
    case InitialKind::Steady: return "steady";
    case InitialKind::DamBreak: return "dam_break";
    }
    return "lake_at_rest";
}

InitialKind parse_initial(const std::string& s)
{
    if (s == "lake_at_rest")
        return InitialKind::LakeAtRest;
    if (s == "steady")
        return InitialKind::Steady;
    if (s == "dam_break")
        return InitialKind::DamBreak;
    throw std::invalid_argument("unknown initial condition '" + s + "'");
}

json error_json(const ErrorReport& e)
{
    json alpha = json::array();
    for (int i = 0; i < e.alpha.size(); ++i)
        alpha.push_back(e.alpha[i]);
    return {{"h", e.h}, {"u", e.u}, {"alpha", alpha}};
}

} // namespace

Scenario scenario_from_json(const json& j)
{
    Scenario s = j.contains("base") ? builtin_scenario(j.at("base").get<std::string>()) : Scenario{};
    s.name = j.value("name", s.name.empty() ? std::string("custom") : s.name);
    if (j.contains("domain")) {
        const auto& d = j.at("domain");
        if (!d.is_array() || d.size() != 2)
            throw std::invalid_argument("domain must be [x_min, x_max]");
        s.grid.x_min = d[0].get<double>();
        s.grid.x_max = d[1].get<double>();
    }
    s.grid.cells = j.value("cells", s.grid.cells);
    if (j.contains("topography"))
        s.topography = parse_topography(j.at("topography").get<std::string>());

    if (j.contains("initial")) {
        const json& ic = j.at("initial");
        if (ic.contains("type"))
            s.initial = parse_initial(ic.at("type").get<std::string>());
        s.surface = ic.value("surface", s.surface);
        s.c1 = ic.value("c1", s.c1);
        s.c2 = ic.value("c2", s.c2);
        s.ratio = ic.value("ratio", s.ratio);
        s.transcritical = ic.value("transcritical", s.transcritical);
        s.split = ic.value("split", s.split);
        s.h_left = ic.value("h_left", s.h_left);
        s.h_right = ic.value("h_right", s.h_right);
        if (ic.contains("velocity")) {
            const json& v = ic.at("velocity");
            const std::string type = v.value("type", std::string("first_last"));
            if (type == "first_last")
                s.velocity.kind = VelocityProfile::Kind::FirstLast;
            else if (type == "sqrt")
                s.velocity.kind = VelocityProfile::Kind::SquareRoot;
            else
                throw std::invalid_argument("unknown velocity profile '" + type + "'");
            s.velocity.um = v.value("um", s.velocity.um);
            s.velocity.first = v.value("first", s.velocity.first);
            s.velocity.last = v.value("last", s.velocity.last);
            s.velocity.mean = v.value("mean", s.velocity.mean);
        }
    }

    if (j.contains("pulse")) {
        const json& p = j.at("pulse");
        s.pulse_amplitude = p.value("amplitude", s.pulse_amplitude);
        s.pulse_center = p.value("center", s.pulse_center);
        s.pulse_width = p.value("width", s.pulse_width);
    }
    if (j.contains("model")) {
        const json& m = j.at("model");
        if (m.contains("kind"))
            s.model.kind = parse_model_kind(m.at("kind").get<std::string>());
        s.model.order = m.value("N", s.model.order);
        s.model.gravity = m.value("g", s.model.gravity);
    }
    s.cfl = j.value("cfl", s.cfl);
    s.t_end = j.value("t_end", s.t_end);
    s.scheme.order = j.value("order", s.scheme.order);
    s.scheme.well_balanced = j.value("well_balanced", s.scheme.well_balanced);
    s.model.validate();
    return s;
}

json scenario_to_json(const Scenario& s)
{
    json ic = {{"type", initial_name(s.initial)}};
    switch (s.initial) {
    case InitialKind::LakeAtRest: ic["surface"] = s.surface; break;
    case InitialKind::Steady:
        ic["c1"] = s.c1;
        ic["c2"] = s.c2;
        ic["ratio"] = s.ratio;
        ic["transcritical"] = s.transcritical;
        ic["split"] = s.split;
        break;
    case InitialKind::DamBreak:
        ic["split"] = s.split;
        ic["h_left"] = s.h_left;
        ic["h_right"] = s.h_right;
        if (s.velocity.kind == VelocityProfile::Kind::SquareRoot)
            ic["velocity"] = {{"type", "sqrt"}, {"mean", s.velocity.mean}};
        else
            ic["velocity"] = {
                {"type", "first_last"}, {"um", s.velocity.um}, {"first", s.velocity.first}, {"last", s.velocity.last}};
        break;
    }
    json out = {{"name", s.name},
            {"domain", {s.grid.x_min, s.grid.x_max}},
            {"cells", s.grid.cells},
            {"topography", topography_name(s.topography)},
            {"initial", ic},
            {"model", {{"kind", std::string(to_string(s.model.kind))}, {"N", s.model.order}, {"g", s.model.gravity}}},
            {"cfl", s.cfl},
            {"t_end", s.t_end},
            {"order", s.scheme.order},
            {"well_balanced", s.scheme.well_balanced}};
    if (s.pulse_amplitude != 0.0)
        out["pulse"] = {{"amplitude", s.pulse_amplitude}, {"center", s.pulse_center}, {"width", s.pulse_width}};
    return out;
}

json run_manifest(const RunResult& r)
{
    return {{"scenario", scenario_to_json(r.scenario)},
            {"build", build_id()},
            {"seconds", r.seconds},
            {"steps", r.stats.steps},
            {"time", r.stats.time},
            {"dt", {{"min", r.stats.min_dt}, {"max", r.stats.max_dt}}},
            {"diagnostics",
             {{"fallback_cells", r.stats.peak.fallback_cells},
              {"transcritical_cells", r.stats.peak.transcritical_cells},
              {"resonant_interfaces", r.stats.peak.resonant_interfaces}}},
            {"l1_drift", error_json(r.drift)}};
}

std::string build_id() { return SWME_GIT_DESCRIBE; }

} // namespace swme
