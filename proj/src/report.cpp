#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "ohres/app.hpp"
#include "text_util.hpp"

namespace ohres::app {

using nlohmann::json;
using nlohmann::ordered_json;
using model::Resource;

namespace {

template <typename T>
std::vector<T> read_array(const json& doc, const char* key, std::size_t size)
{
    const auto& v = doc.at(key);
    if (!v.is_array()) throw ConfigError(std::string("solution schedule.") + key + " must be an array");
    if (v.size() != size) {
        throw ConfigError(std::string("solution schedule.") + key + " has " + std::to_string(v.size()) +
                          " entries, expected " + std::to_string(size));
    }
    std::vector<T> out;
    out.reserve(size);
    for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError(std::string("solution schedule.") + key + " must contain numbers");
        out.push_back(x.get<T>());
    }
    return out;
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Thousands separators for dollar amounts.
std::string dollars(double v)
{
    const bool neg = v < 0;
    const long long cents = std::llround(std::fabs(v) * 100.0);
    std::string whole = std::to_string(cents / 100);
    for (int i = static_cast<int>(whole.size()) - 3; i > 0; i -= 3) whole.insert(static_cast<std::size_t>(i), ",");
    char frac[4];
    std::snprintf(frac, sizeof frac, "%02lld", cents % 100);
    return std::string(neg ? "-$" : "$") + whole + "." + frac;
}

double hourly_generation(const model::SizingScenario& s, const model::SizingSolution& sol, Resource r, std::size_t t)
{
    return static_cast<double>(sol.count(r)) * s.profile(r)[t];
}

double soc(const model::SizingSolution& sol, std::size_t t)
{
    return sol.e_bess > 0.0 ? sol.energy[t] / sol.e_bess : 0.0;
}

}  // namespace

std::string solution_to_json(const std::string& region, const model::SizingSolution& sol, int indent)
{
    ordered_json doc;
    doc["region"] = region;
    doc["status"] = std::string(model::to_string(sol.diagnostics.status));
    doc["objective"] = sol.objective;
    ordered_json counts;
    for (Resource r : model::kResources) counts[std::string(model::resource_key(r))] = sol.count(r);
    doc["counts"] = counts;
    doc["e_bess"] = sol.e_bess;
    doc["e_initial"] = sol.e_initial;
    ordered_json sched;
    sched["energy"] = sol.energy;
    sched["p_charge"] = sol.p_charge;
    sched["p_discharge"] = sol.p_discharge;
    sched["p_curtail"] = sol.p_curtail;
    sched["u_charge"] = sol.u_charge;
    sched["u_discharge"] = sol.u_discharge;
    doc["schedule"] = sched;
    const auto& d = sol.diagnostics;
    doc["diagnostics"] = ordered_json{{"nodes", d.nodes},
                                      {"lp_iterations", d.lp_iterations},
                                      {"gap", d.gap},
                                      {"best_bound", d.best_bound},
                                      {"root_bound", d.root_bound}};
    return doc.dump(indent) + "\n";
}

model::SizingSolution solution_from_json(const std::string& text, std::string* region)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("solution is not valid JSON: ") + e.what());
    }
    try {
        model::SizingSolution sol;
        if (region) *region = doc.value("region", std::string("unnamed"));
        if (doc.contains("status")) sol.diagnostics.status = model::parse_solve_status(doc.at("status").get<std::string>());
        sol.objective = doc.at("objective").get<double>();
        const auto& counts = doc.at("counts");
        for (Resource r : model::kResources) {
            const auto& c = counts.at(std::string(model::resource_key(r)));
            if (!c.is_number()) throw ConfigError("solution counts must be numbers");
            const double v = c.get<double>();
            if (v != std::round(v)) {
                throw ConfigError("solution count for " + std::string(model::resource_key(r)) + " is not an integer");
            }
            sol.counts[model::index_of(r)] = static_cast<std::int64_t>(v);
        }
        sol.e_bess = doc.at("e_bess").get<double>();
        sol.e_initial = doc.at("e_initial").get<double>();
        const auto& sched = doc.at("schedule");
        if (!sched.at("energy").is_array()) throw ConfigError("solution schedule.energy must be an array");
        const std::size_t T = sched.at("energy").size();
        sol.energy = read_array<double>(sched, "energy", T);
        sol.p_charge = read_array<double>(sched, "p_charge", T);
        sol.p_discharge = read_array<double>(sched, "p_discharge", T);
        sol.p_curtail = read_array<double>(sched, "p_curtail", T);
        sol.u_charge = read_array<int>(sched, "u_charge", T);
        sol.u_discharge = read_array<int>(sched, "u_discharge", T);
        if (doc.contains("diagnostics")) {
            const auto& d = doc.at("diagnostics");
            auto& out = sol.diagnostics;
            out.nodes = d.value("nodes", std::int64_t{0});
            out.lp_iterations = d.value("lp_iterations", std::int64_t{0});
            out.gap = d.value("gap", 0.0);
            out.best_bound = d.value("best_bound", 0.0);
            out.root_bound = d.value("root_bound", 0.0);
        }
        return sol;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed solution document: ") + e.what());
    }
}

ReportFormat parse_report_format(const std::string& flag)
{
    const auto f = detail::lower(flag);
    if (f == "text" || f == "txt") return ReportFormat::Text;
    if (f == "json") return ReportFormat::Json;
    if (f == "csv") return ReportFormat::Csv;
    throw ConfigError("unknown report format '" + flag + "' (expected text, json or csv)");
}

std::string render_report(const model::SizingScenario& s, const model::SizingSolution& sol, ReportFormat format)
{
    const auto costs = model::cost_breakdown(s, sol);
    const std::size_t T = sol.horizon();
    std::ostringstream os;

    if (format == ReportFormat::Csv) {
        os << "hour,load_kw,wec_kw,tec_kw,owt_kw,fpv_kw,charge_kw,discharge_kw,curtail_kw,energy_kwh,soc\n";
        for (std::size_t t = 0; t < T; ++t) {
            os << t + 1 << ',' << detail::shortest(s.load[t]);
            for (Resource r : model::kResources) os << ',' << detail::shortest(hourly_generation(s, sol, r, t));
            os << ',' << detail::shortest(sol.p_charge[t]) << ',' << detail::shortest(sol.p_discharge[t]) << ','
               << detail::shortest(sol.p_curtail[t]) << ',' << detail::shortest(sol.energy[t]) << ','
               << detail::shortest(soc(sol, t)) << '\n';
        }
        return os.str();
    }

    if (format == ReportFormat::Json) {
        ordered_json doc;
        doc["region"] = s.region;
        doc["status"] = std::string(model::to_string(sol.diagnostics.status));
        doc["objective"] = sol.objective;
        ordered_json breakdown = ordered_json::array();
        auto add = [&](std::string name, double qty, const model::CostTerms& c) {
            breakdown.push_back(ordered_json{{"subsystem", std::move(name)},
                                             {"quantity", qty},
                                             {"precommissioning", c.precommissioning},
                                             {"capital", c.capital},
                                             {"om", c.om},
                                             {"decommissioning", c.decommissioning},
                                             {"total", c.total()}});
        };
        for (Resource r : model::kResources) {
            add(std::string(model::resource_key(r)), static_cast<double>(sol.count(r)),
                costs.generators[model::index_of(r)]);
        }
        add("bess", sol.e_bess, costs.bess);
        doc["breakdown"] = breakdown;
        ordered_json hours = ordered_json::array();
        for (std::size_t t = 0; t < T; ++t) {
            ordered_json h{{"hour", t + 1}, {"load", s.load[t]}};
            for (Resource r : model::kResources) {
                h[std::string(model::resource_key(r))] = hourly_generation(s, sol, r, t);
            }
            h["charge"] = sol.p_charge[t];
            h["discharge"] = sol.p_discharge[t];
            h["curtail"] = sol.p_curtail[t];
            h["energy"] = sol.energy[t];
            h["soc"] = soc(sol, t);
            hours.push_back(std::move(h));
        }
        doc["dispatch"] = hours;
        const auto& d = sol.diagnostics;
        doc["diagnostics"] = ordered_json{{"nodes", d.nodes},
                                          {"lp_iterations", d.lp_iterations},
                                          {"gap", d.gap},
                                          {"best_bound", d.best_bound},
                                          {"root_bound", d.root_bound}};
        return doc.dump(2) + "\n";
    }

    char buf[256];
    os << "Region: " << s.region << "\n";
    os << "Status: " << model::to_string(sol.diagnostics.status) << "\n";
    os << "Lifetime cost: " << dollars(sol.objective) << "\n\n";
    std::snprintf(buf, sizeof buf, "%-6s %12s %18s %18s %18s %18s %20s\n", "", "quantity", "precommissioning",
                  "capital", "O&M", "decommissioning", "total");
    os << buf;
    auto row = [&](const std::string& name, const std::string& qty, const model::CostTerms& c) {
        std::snprintf(buf, sizeof buf, "%-6s %12s %18s %18s %18s %18s %20s\n", name.c_str(), qty.c_str(),
                      dollars(c.precommissioning).c_str(), dollars(c.capital).c_str(), dollars(c.om).c_str(),
                      dollars(c.decommissioning).c_str(), dollars(c.total()).c_str());
        os << buf;
    };
    for (Resource r : model::kResources) {
        row(std::string(model::resource_label(r)), std::to_string(sol.count(r)), costs.generators[model::index_of(r)]);
    }
    row("BESS", fmt("%.1f kWh", sol.e_bess), costs.bess);

    os << "\nDispatch (kW, energy in kWh)\n";
    std::snprintf(buf, sizeof buf, "%4s %11s %10s %10s %11s %11s %10s %10s %10s %11s %6s\n", "hour", "load", "WEC",
                  "TEC", "OWT", "FPV", "charge", "discharge", "curtail", "energy", "SOC");
    os << buf;
    for (std::size_t t = 0; t < T; ++t) {
        std::snprintf(buf, sizeof buf, "%4zu %11.2f %10.2f %10.2f %11.2f %11.2f %10.2f %10.2f %10.2f %11.2f %6.3f\n",
                      t + 1, s.load[t], hourly_generation(s, sol, Resource::Wec, t),
                      hourly_generation(s, sol, Resource::Tec, t), hourly_generation(s, sol, Resource::Owt, t),
                      hourly_generation(s, sol, Resource::Fpv, t), sol.p_charge[t], sol.p_discharge[t],
                      sol.p_curtail[t], sol.energy[t], soc(sol, t));
        os << buf;
    }
    const auto& d = sol.diagnostics;
    std::snprintf(buf, sizeof buf, "\nSolver: %lld nodes, %lld LP iterations, gap %.3e, root bound %s\n",
                  static_cast<long long>(d.nodes), static_cast<long long>(d.lp_iterations), d.gap,
                  dollars(d.root_bound).c_str());
    os << buf;
    return os.str();
}

std::string render_validation(const model::ValidationReport& report)
{
    std::ostringstream os;
    char buf[200];
    for (const auto& f : report.families) {
        const bool ok = f.flagged.empty();
        std::snprintf(buf, sizeof buf, "%-16s max violation %.3e  %s", f.family.c_str(), f.max_violation,
                      ok ? "ok" : "FAIL");
        os << buf;
        if (!ok) {
            os << " hours";
            const std::size_t shown = std::min<std::size_t>(f.flagged.size(), 12);
            for (std::size_t i = 0; i < shown; ++i) {
                os << (i ? "," : " ") << (f.flagged[i] == 0 ? std::string("-") : std::to_string(f.flagged[i]));
            }
            if (shown < f.flagged.size()) os << ",...";
        }
        os << '\n';
    }
    std::snprintf(buf, sizeof buf, "objective        reported %.6f  recomputed %.6f  discrepancy %.3e (%.3e relative)  %s\n",
                  report.objective_reported, report.objective_recomputed, report.objective_discrepancy,
                  report.objective_relative_discrepancy, report.objective_ok() ? "ok" : "FAIL");
    os << buf;
    os << (report.passed() ? "validation: PASS\n" : "validation: FAIL\n");
    return os.str();
}

}  // namespace ohres::app
