#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "ohres/app.hpp"

namespace ohres::app {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const json& require_object(const json& j, const std::string& where)
{
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    return j;
}

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where)
{
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* allowed : keys) known = known || k == allowed;
        if (!known) throw ConfigError("unknown key '" + k + "' in " + where);
    }
}

void read_number(const json& j, const char* key, double& target, const std::string& where)
{
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    target = v.get<double>();
}

void read_optional_number(const json& j, const char* key, std::optional<double>& target, const std::string& where)
{
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (v.is_null()) {
        target.reset();
        return;
    }
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number or null");
    target = v.get<double>();
}

void read_bool(const json& j, const char* key, bool& target, const std::string& where)
{
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (!v.is_boolean()) throw ConfigError(where + "." + key + " must be true or false");
    target = v.get<bool>();
}

std::string read_string(const json& j, const char* key, const std::string& where)
{
    const auto& v = j.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
    return v.get<std::string>();
}

fs::path existing_path(const json& j, const char* key, const fs::path& base, const std::string& where)
{
    fs::path p = read_string(j, key, where);
    if (p.is_relative()) p = base / p;
    if (!fs::exists(p)) throw ConfigError(where + "." + key + ": file not found: " + p.string());
    return p;
}

void read_cost(const json& j, model::SubsystemCost& cost, const std::string& where)
{
    require_object(j, where);
    allow_keys(j, {"precommissioning", "capital", "om_per_year", "decommissioning"}, where);
    read_number(j, "precommissioning", cost.precommissioning, where);
    read_number(j, "capital", cost.capital, where);
    read_number(j, "om_per_year", cost.om_per_year, where);
    read_number(j, "decommissioning", cost.decommissioning, where);
}

void read_rotor(const json& j, projection::RotorSpec& r, const std::string& where)
{
    require_object(j, where);
    allow_keys(j,
               {"fluid_density", "rotor_radius", "power_coefficient", "electrical_efficiency", "rated_power_kw",
                "cut_in_speed", "cut_out_speed"},
               where);
    read_number(j, "fluid_density", r.fluid_density, where);
    read_number(j, "rotor_radius", r.rotor_radius, where);
    read_number(j, "power_coefficient", r.power_coefficient, where);
    read_number(j, "electrical_efficiency", r.electrical_efficiency, where);
    read_number(j, "rated_power_kw", r.rated_power, where);
    read_number(j, "cut_in_speed", r.cut_in_speed, where);
    read_optional_number(j, "cut_out_speed", r.cut_out_speed, where);
}

std::vector<double> read_series(const json& v, const std::string& where)
{
    if (!v.is_array()) throw ConfigError(where + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError(where + " must contain only numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

}  // namespace

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ScenarioFile parse_scenario(const std::string& text, const fs::path& base_dir)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
    }
    require_object(doc, "scenario");
    allow_keys(doc,
               {"region", "profiles", "profiles_file", "datasets", "projection", "costs", "bess", "bounds",
                "allow_curtailment", "solver", "validation_tolerance", "enumeration_budget", "description"},
               "scenario");

    ScenarioFile s;
    s.base_dir = base_dir;
    if (doc.contains("region")) s.region = read_string(doc, "region", "scenario");

    if (doc.contains("profiles")) {
        const auto& p = require_object(doc["profiles"], "profiles");
        allow_keys(p, {"load", "wec", "tec", "owt", "fpv"}, "profiles");
        for (const auto& [name, v] : p.items()) s.inline_profiles[name] = read_series(v, "profiles." + name);
    }
    if (doc.contains("profiles_file")) s.profiles_file = existing_path(doc, "profiles_file", base_dir, "scenario");

    if (doc.contains("datasets")) {
        const auto& d = require_object(doc["datasets"], "datasets");
        allow_keys(d,
                   {"ndbc", "currents", "currents_unit", "pvwatts", "pv_system_rating_kw", "wec_matrix",
                    "wec_rated_power_kw", "wave_period"},
                   "datasets");
        DatasetConfig ds;
        if (d.contains("ndbc")) ds.ndbc = existing_path(d, "ndbc", base_dir, "datasets");
        if (d.contains("currents")) ds.currents = existing_path(d, "currents", base_dir, "datasets");
        if (d.contains("pvwatts")) ds.pvwatts = existing_path(d, "pvwatts", base_dir, "datasets");
        if (d.contains("wec_matrix")) ds.wec_matrix = existing_path(d, "wec_matrix", base_dir, "datasets");
        if (d.contains("currents_unit")) {
            ds.currents_unit = ingest::parse_speed_unit(read_string(d, "currents_unit", "datasets"));
        }
        if (d.contains("wave_period")) {
            ds.wave_period = projection::parse_wave_period_channel(read_string(d, "wave_period", "datasets"));
        }
        read_optional_number(d, "pv_system_rating_kw", ds.pv_system_rating, "datasets");
        read_number(d, "wec_rated_power_kw", ds.wec_rated_power, "datasets");
        s.datasets = ds;
    }

    if (doc.contains("projection")) {
        const auto& p = require_object(doc["projection"], "projection");
        allow_keys(p, {"tec", "owt", "shear", "fpv"}, "projection");
        if (p.contains("tec")) read_rotor(p["tec"], s.projection.tec, "projection.tec");
        if (p.contains("owt")) read_rotor(p["owt"], s.projection.owt, "projection.owt");
        if (p.contains("shear")) {
            const auto& sh = require_object(p["shear"], "projection.shear");
            allow_keys(sh, {"measurement_height", "hub_height", "roughness_length"}, "projection.shear");
            read_number(sh, "measurement_height", s.projection.shear.measurement_height, "projection.shear");
            read_number(sh, "hub_height", s.projection.shear.hub_height, "projection.shear");
            read_number(sh, "roughness_length", s.projection.shear.roughness_length, "projection.shear");
        }
        if (p.contains("fpv")) {
            const auto& f = require_object(p["fpv"], "projection.fpv");
            allow_keys(f, {"panel_rating_kw", "reference_system_rating_kw"}, "projection.fpv");
            read_number(f, "panel_rating_kw", s.projection.fpv.panel_rating, "projection.fpv");
            if (f.contains("reference_system_rating_kw")) {
                read_number(f, "reference_system_rating_kw", s.projection.fpv.reference_system_rating,
                            "projection.fpv");
                s.fpv_reference_from_file = false;
            }
        }
        try {
            s.projection.validate();
        } catch (const ParameterError& e) {
            throw ConfigError(std::string("projection: ") + e.what());
        }
    }

    if (doc.contains("costs")) {
        const auto& c = require_object(doc["costs"], "costs");
        allow_keys(c, {"wec", "tec", "owt", "fpv", "bess", "bess_degradation", "lifetime_years"}, "costs");
        for (model::Resource r : model::kResources) {
            const std::string key(model::resource_key(r));
            if (c.contains(key)) read_cost(c[key], s.costs.unit(r), "costs." + key);
        }
        if (c.contains("bess")) read_cost(c["bess"], s.costs.bess, "costs.bess");
        read_number(c, "bess_degradation", s.costs.bess_degradation, "costs");
        read_number(c, "lifetime_years", s.costs.lifetime_years, "costs");
    }
    try {
        s.costs.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("costs: ") + e.what());
    }

    if (doc.contains("bess")) {
        const auto& b = require_object(doc["bess"], "bess");
        allow_keys(b,
                   {"charge_efficiency", "discharge_efficiency", "soc_min", "soc_max", "p_max_charge_kw",
                    "p_max_discharge_kw", "enabled", "e_max_kwh"},
                   "bess");
        read_number(b, "charge_efficiency", s.bess.charge_efficiency, "bess");
        read_number(b, "discharge_efficiency", s.bess.discharge_efficiency, "bess");
        read_number(b, "soc_min", s.bess.soc_min, "bess");
        read_number(b, "soc_max", s.bess.soc_max, "bess");
        read_optional_number(b, "p_max_charge_kw", s.bess.p_max_charge, "bess");
        read_optional_number(b, "p_max_discharge_kw", s.bess.p_max_discharge, "bess");
        read_bool(b, "enabled", s.bess.enabled, "bess");
        read_optional_number(b, "e_max_kwh", s.bess.e_max, "bess");
    }
    try {
        s.bess.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("bess: ") + e.what());
    }

    if (doc.contains("bounds")) {
        const auto& b = require_object(doc["bounds"], "bounds");
        allow_keys(b, {"wec", "tec", "owt", "fpv"}, "bounds");
        for (model::Resource r : model::kResources) {
            const std::string key(model::resource_key(r));
            read_number(b, key.c_str(), s.bounds[r], "bounds");
            if (!(s.bounds[r] >= 0.0)) throw ConfigError("bounds." + key + " must be >= 0");
        }
    }
    read_bool(doc, "allow_curtailment", s.allow_curtailment, "scenario");

    if (doc.contains("solver")) {
        const auto& o = require_object(doc["solver"], "solver");
        allow_keys(o,
                   {"gap", "node_limit", "time_limit_s", "feasibility_tolerance", "integrality_tolerance",
                    "seed_incumbent", "node_rounding", "bland_threshold"},
                   "solver");
        read_number(o, "gap", s.solver.relative_gap, "solver");
        read_number(o, "time_limit_s", s.solver.time_limit_seconds, "solver");
        read_number(o, "feasibility_tolerance", s.solver.feasibility_tolerance, "solver");
        read_number(o, "integrality_tolerance", s.solver.integrality_tolerance, "solver");
        read_bool(o, "seed_incumbent", s.solver.seed_incumbent, "solver");
        read_bool(o, "node_rounding", s.solver.node_rounding, "solver");
        if (o.contains("node_limit")) {
            if (!o["node_limit"].is_number_integer()) throw ConfigError("solver.node_limit must be an integer");
            s.solver.node_limit = o["node_limit"].get<std::int64_t>();
        }
        if (o.contains("bland_threshold")) {
            if (!o["bland_threshold"].is_number_integer()) {
                throw ConfigError("solver.bland_threshold must be an integer");
            }
            s.solver.bland_threshold = o["bland_threshold"].get<int>();
        }
    }
    s.solver.validate();
    read_number(doc, "validation_tolerance", s.validation_tolerance, "scenario");
    read_number(doc, "enumeration_budget", s.enumeration_budget, "scenario");
    if (!(s.validation_tolerance > 0.0)) throw ConfigError("validation_tolerance must be positive");
    if (!(s.enumeration_budget > 0.0)) throw ConfigError("enumeration_budget must be positive");
    return s;
}

ScenarioFile load_scenario(const fs::path& path)
{
    auto base = path.parent_path();
    if (base.empty()) base = ".";
    return parse_scenario(read_file(path), base);
}

}  // namespace ohres::app
