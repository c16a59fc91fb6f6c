#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ohres/app.hpp"

namespace ohres::app {

namespace fs = std::filesystem;
using model::Resource;

namespace {

std::ifstream open_input(const fs::path& p)
{
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot open " + p.string());
    return in;
}

ingest::TypicalDayProfile load_profile(const std::vector<double>& hours)
{
    if (hours.size() != ingest::kHoursPerDay) {
        throw ConfigError("load profile must have 24 hourly values for a profiles document, found " +
                          std::to_string(hours.size()));
    }
    ingest::TypicalDayProfile p;
    std::copy(hours.begin(), hours.end(), p.hour_values.begin());
    p.sample_counts.fill(1);
    return p;
}

}  // namespace

ingest::ProfileSet build_profiles(const ScenarioFile& s)
{
    if (!s.datasets) throw ConfigError("scenario has no \"datasets\" section to build profiles from");
    const auto& ds = *s.datasets;
    ingest::ProfileSet out;

    if (ds.ndbc) {
        auto in = open_input(*ds.ndbc);
        const auto source = ds.ndbc->string();
        const auto met = ingest::parse_ndbc(in, source);
        out["owt"] = ingest::typical_day(projection::project_owt_series(met, s.projection.owt, s.projection.shear),
                                         source);
        if (ds.wec_matrix) {
            auto min = open_input(*ds.wec_matrix);
            const auto matrix = projection::WecPowerMatrix::from_csv(min, ds.wec_rated_power, ds.wec_matrix->string());
            out["wec"] = ingest::typical_day(projection::project_wec_series(met, matrix, ds.wave_period), source);
        }
    }
    if (ds.currents) {
        auto in = open_input(*ds.currents);
        const auto source = ds.currents->string();
        const auto currents = ingest::parse_currents(in, ds.currents_unit, source);
        out["tec"] = ingest::typical_day(projection::project_tec_series(currents, s.projection.tec), source);
    }
    if (ds.pvwatts) {
        auto in = open_input(*ds.pvwatts);
        const auto source = ds.pvwatts->string();
        const auto pv = ingest::parse_pvwatts(in, ds.pv_system_rating, source);
        auto fpv = s.projection.fpv;
        if (s.fpv_reference_from_file) fpv.reference_system_rating = pv.system_rating;
        out["fpv"] = ingest::typical_day(projection::project_fpv_series(pv.records, fpv), source);
    }
    if (const auto it = s.inline_profiles.find("load"); it != s.inline_profiles.end()) {
        out["load"] = load_profile(it->second);
    }
    return out;
}

std::string summarize_profiles(const ingest::ProfileSet& profiles)
{
    std::ostringstream os;
    char buf[160];
    for (const auto& [name, p] : profiles) {
        const auto [lo, hi] = std::minmax_element(p.hour_values.begin(), p.hour_values.end());
        double mean = 0.0;
        for (double v : p.hour_values) mean += v;
        mean /= static_cast<double>(ingest::kHoursPerDay);
        int samples = 0;
        for (int n : p.sample_counts) samples += n;
        std::snprintf(buf, sizeof buf, "%-5s min %12.4f  mean %12.4f  max %12.4f kW  (%d samples)\n", name.c_str(),
                      *lo, mean, *hi, samples);
        os << buf;
        os << "      ";
        for (std::size_t h = 0; h < ingest::kHoursPerDay; ++h) {
            std::snprintf(buf, sizeof buf, "%s%.4g", h ? " " : "", p.hour_values[h]);
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

model::SizingScenario sizing_scenario(const ScenarioFile& s)
{
    model::SizingScenario out;
    out.region = s.region;
    out.costs = s.costs;
    out.bess = s.bess;
    out.bounds = s.bounds;
    out.allow_curtailment = s.allow_curtailment;

    std::optional<ingest::ProfileSet> document;
    if (s.profiles_file) document = ingest::profiles_from_json(read_file(*s.profiles_file), s.profiles_file->string());
    std::optional<ingest::ProfileSet> built;

    auto lookup = [&](const std::string& name) -> std::optional<std::vector<double>> {
        if (const auto it = s.inline_profiles.find(name); it != s.inline_profiles.end()) return it->second;
        if (document) {
            if (const auto it = document->find(name); it != document->end()) return it->second.as_vector();
        }
        if (name != "load" && s.datasets) {
            if (!built) built = build_profiles(s);
            if (const auto it = built->find(name); it != built->end()) return it->second.as_vector();
        }
        return std::nullopt;
    };

    const auto load = lookup("load");
    if (!load) throw ConfigError("scenario has no load profile (inline \"profiles.load\" or profiles_file)");
    out.load = *load;
    for (Resource r : model::kResources) {
        const auto p = lookup(std::string(model::resource_key(r)));
        out.generation[model::index_of(r)] = p ? *p : std::vector<double>(out.load.size(), 0.0);
    }
    out.validate();
    return out;
}

ValidationError::ValidationError(const std::string& message, model::ValidationReport report)
    : Error(message), report_(std::move(report))
{
}

std::string diagnose_infeasibility(const model::SizingScenario& s)
{
    const std::size_t T = s.horizon();
    const bool storage = s.bess.enabled && s.bess.e_max.value_or(1.0) > 0.0 && s.discharge_power_limit() > 0.0;
    std::vector<std::size_t> short_hours;
    for (std::size_t t = 0; t < T; ++t) {
        double supply = 0.0;
        for (Resource r : model::kResources) supply += s.bounds[r] * s.profile(r)[t];
        const double reach = supply + (storage ? s.discharge_power_limit() : 0.0);
        if (s.load[t] > reach * (1.0 + 1e-9)) short_hours.push_back(t + 1);
    }
    std::ostringstream os;
    if (!short_hours.empty()) {
        os << "load exceeds max possible supply at bounds" << (storage ? " plus storage discharge limit" : "")
           << " in hour(s)";
        for (std::size_t i = 0; i < short_hours.size(); ++i) os << (i ? ", " : " ") << short_hours[i];
        return os.str();
    }
    if (!storage) {
        os << "no unit mix within the count bounds matches the load hour by hour"
           << (s.allow_curtailment ? "" : " (curtailment is disabled)");
        return os.str();
    }
    os << "no unit mix and storage schedule within the bounds satisfies the balance and storage constraints";
    if (!s.allow_curtailment) os << " (curtailment is disabled)";
    return os.str();
}

SolveOutcome solve_scenario(const model::SizingScenario& scenario, const solver::SolverOptions& options,
                            double validation_tolerance)
{
    const auto start = std::chrono::steady_clock::now();
    const auto problem = model::assemble_milp(scenario);
    const auto result = solver::solve_milp(problem, options);

    switch (result.status) {
        case solver::MilpStatus::Infeasible:
            throw InfeasibleError("scenario '" + scenario.region + "' is infeasible: " +
                                  diagnose_infeasibility(scenario));
        case solver::MilpStatus::Unbounded: throw Error("sizing problem is unbounded");
        default: break;
    }
    if (!result.has_solution) {
        throw LimitError(std::string("solver stopped (") + std::string(solver::to_string(result.status)) +
                         ") after " + std::to_string(result.nodes) + " nodes without a feasible solution");
    }

    SolveOutcome out;
    out.solution = model::extract_solution(scenario, problem, result.values);
    out.solution.objective = result.objective;
    auto& d = out.solution.diagnostics;
    d.status = result.status == solver::MilpStatus::Optimal     ? model::SolveStatus::Optimal
               : result.status == solver::MilpStatus::NodeLimit ? model::SolveStatus::NodeLimit
                                                                : model::SolveStatus::TimeLimit;
    d.nodes = result.nodes;
    d.lp_iterations = result.lp_iterations;
    d.gap = result.gap;
    d.best_bound = result.best_bound;
    d.root_bound = result.root_bound;

    out.validation = model::validate_solution(scenario, out.solution, validation_tolerance);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.validation.passed()) {
        throw ValidationError("solution failed independent validation:\n" + render_validation(out.validation),
                              out.validation);
    }
    return out;
}

OracleComparison compare_with_oracle(const model::SizingScenario& scenario, const solver::SolverOptions& options,
                                     double budget)
{
    const auto problem = model::assemble_milp(scenario);
    OracleComparison c;
    // Refuse before spending time on branch-and-bound.
    const double size = solver::enumeration_size(problem);
    if (!(size <= budget)) {
        throw BudgetError("enumeration needs " + std::to_string(size) + " assignments, exceeding the budget of " +
                              std::to_string(budget) + "; required budget: " + std::to_string(size),
                          size);
    }
    c.milp = solver::solve_milp(problem, options);
    c.oracle = solver::brute_force_oracle(problem, budget, options);

    const bool milp_feasible = c.milp.has_solution;
    c.verdicts_agree = milp_feasible == c.oracle.feasible;
    if (milp_feasible && c.oracle.feasible) {
        c.relative_difference =
            std::fabs(c.milp.objective - c.oracle.objective) / std::max(1.0, std::fabs(c.oracle.objective));
    }
    c.agree = c.verdicts_agree && c.relative_difference <= kOracleAgreementTolerance;

    std::ostringstream os;
    char buf[200];
    os << "scenario: " << scenario.region << "\n";
    if (milp_feasible) {
        std::snprintf(buf, sizeof buf, "branch-and-bound: %s, objective %.10g (%lld nodes)\n",
                      std::string(solver::to_string(c.milp.status)).c_str(), c.milp.objective,
                      static_cast<long long>(c.milp.nodes));
    } else {
        std::snprintf(buf, sizeof buf, "branch-and-bound: %s\n", std::string(solver::to_string(c.milp.status)).c_str());
    }
    os << buf;
    if (c.oracle.feasible) {
        std::snprintf(buf, sizeof buf, "oracle:           objective %.10g (%lld assignments, %lld LP solves)\n",
                      c.oracle.objective, static_cast<long long>(c.oracle.assignments),
                      static_cast<long long>(c.oracle.lp_solves));
    } else {
        std::snprintf(buf, sizeof buf, "oracle:           infeasible (%lld assignments, %lld LP solves)\n",
                      static_cast<long long>(c.oracle.assignments), static_cast<long long>(c.oracle.lp_solves));
    }
    os << buf;
    if (milp_feasible && c.oracle.feasible) {
        std::snprintf(buf, sizeof buf, "relative difference: %.3e\n", c.relative_difference);
        os << buf;
    }
    os << (c.agree ? "agreement: yes\n" : "agreement: NO\n");
    c.text = os.str();
    return c;
}

}  // namespace ohres::app
