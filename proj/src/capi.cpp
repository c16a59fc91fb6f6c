#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "ohres/app.hpp"
#include "ohres/ohres.h"

struct ohres_scenario {
    ohres::app::ScenarioFile file;
    mutable std::optional<ohres::model::SizingScenario> resolved;

    const ohres::model::SizingScenario& sizing() const
    {
        if (!resolved) resolved = ohres::app::sizing_scenario(file);
        return *resolved;
    }
};

struct ohres_solution {
    std::string region;
    ohres::model::SizingSolution solution;
};

namespace {

thread_local std::string last_error;

ohres_status fail(ohres_status code, const std::string& message)
{
    last_error = message;
    return code;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
ohres_status guarded(F&& body)
{
    using namespace ohres;
    try {
        return body();
    } catch (const app::InfeasibleError& e) {
        return fail(OHRES_ERR_INFEASIBLE, e.what());
    } catch (const app::ValidationError& e) {
        return fail(OHRES_ERR_VALIDATION, e.what());
    } catch (const app::LimitError& e) {
        return fail(OHRES_ERR_LIMIT, e.what());
    } catch (const BudgetError& e) {
        return fail(OHRES_ERR_LIMIT, e.what());
    } catch (const DataError& e) {
        return fail(OHRES_ERR_DATA, e.what());
    } catch (const PivotError& e) {
        return fail(OHRES_ERR_NUMERIC, e.what());
    } catch (const ConfigError& e) {
        return fail(OHRES_ERR_CONFIG, e.what());
    } catch (const ParameterError& e) {
        return fail(OHRES_ERR_CONFIG, e.what());
    } catch (const AssemblyError& e) {
        return fail(OHRES_ERR_CONFIG, e.what());
    } catch (const std::bad_alloc&) {
        return fail(OHRES_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(OHRES_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(OHRES_ERR_INTERNAL, "unknown error");
    }
}

char* duplicate(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

ohres_status null_argument(const char* name)
{
    return fail(OHRES_ERR_CONFIG, std::string("null argument: ") + name);
}

bool valid_resource(ohres_resource r)
{
    return r >= OHRES_WEC && r <= OHRES_FPV;
}

}  // namespace

extern "C" {

const char* ohres_last_error(void)
{
    return last_error.c_str();
}

const char* ohres_status_name(ohres_status status)
{
    switch (status) {
        case OHRES_OK: return "ok";
        case OHRES_ERR_CONFIG: return "config";
        case OHRES_ERR_INFEASIBLE: return "infeasible";
        case OHRES_ERR_VALIDATION: return "validation";
        case OHRES_ERR_LIMIT: return "limit";
        case OHRES_ERR_DATA: return "data";
        case OHRES_ERR_NUMERIC: return "numeric";
        case OHRES_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void ohres_string_free(char* s)
{
    std::free(s);
}

ohres_status ohres_scenario_load(const char* path, ohres_scenario** out)
{
    if (!path) return null_argument("path");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        auto s = std::make_unique<ohres_scenario>();
        s->file = ohres::app::load_scenario(path);
        *out = s.release();
        return OHRES_OK;
    });
}

ohres_status ohres_scenario_parse(const char* json_text, const char* base_dir, ohres_scenario** out)
{
    if (!json_text) return null_argument("json_text");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        auto s = std::make_unique<ohres_scenario>();
        s->file = ohres::app::parse_scenario(json_text, base_dir ? base_dir : ".");
        *out = s.release();
        return OHRES_OK;
    });
}

void ohres_scenario_free(ohres_scenario* scenario)
{
    delete scenario;
}

ohres_status ohres_scenario_set_gap(ohres_scenario* scenario, double relative_gap)
{
    if (!scenario) return null_argument("scenario");
    return guarded([&] {
        auto opts = scenario->file.solver;
        opts.relative_gap = relative_gap;
        opts.validate();
        scenario->file.solver = opts;
        return OHRES_OK;
    });
}

ohres_status ohres_scenario_set_node_limit(ohres_scenario* scenario, int64_t node_limit)
{
    if (!scenario) return null_argument("scenario");
    return guarded([&] {
        auto opts = scenario->file.solver;
        opts.node_limit = node_limit;
        opts.validate();
        scenario->file.solver = opts;
        return OHRES_OK;
    });
}

ohres_status ohres_profiles_build(const ohres_scenario* scenario, char** document, char** summary)
{
    if (!scenario) return null_argument("scenario");
    if (!document) return null_argument("document");
    *document = nullptr;
    if (summary) *summary = nullptr;
    return guarded([&] {
        const auto profiles = ohres::app::build_profiles(scenario->file);
        std::string doc = ohres::ingest::profiles_to_json(profiles);
        std::string text = ohres::app::summarize_profiles(profiles);
        *document = duplicate(doc);
        if (summary) *summary = duplicate(text);
        return OHRES_OK;
    });
}

ohres_status ohres_solve(const ohres_scenario* scenario, ohres_solution** out)
{
    if (!scenario) return null_argument("scenario");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        const auto& s = scenario->sizing();
        auto sol = std::make_unique<ohres_solution>();
        sol->region = s.region;
        auto outcome = ohres::app::solve_scenario(s, scenario->file.solver, scenario->file.validation_tolerance);
        sol->solution = std::move(outcome.solution);
        *out = sol.release();
        return OHRES_OK;
    });
}

ohres_status ohres_solution_parse(const char* json_text, ohres_solution** out)
{
    if (!json_text) return null_argument("json_text");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        auto sol = std::make_unique<ohres_solution>();
        sol->solution = ohres::app::solution_from_json(json_text, &sol->region);
        *out = sol.release();
        return OHRES_OK;
    });
}

void ohres_solution_free(ohres_solution* solution)
{
    delete solution;
}

ohres_status ohres_solution_to_json(const ohres_solution* solution, char** out)
{
    if (!solution) return null_argument("solution");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        *out = duplicate(ohres::app::solution_to_json(solution->region, solution->solution));
        return OHRES_OK;
    });
}

ohres_status ohres_solution_report(const ohres_scenario* scenario, const ohres_solution* solution,
                                   ohres_format format, char** out)
{
    if (!scenario) return null_argument("scenario");
    if (!solution) return null_argument("solution");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        ohres::app::ReportFormat f;
        switch (format) {
            case OHRES_FORMAT_TEXT: f = ohres::app::ReportFormat::Text; break;
            case OHRES_FORMAT_JSON: f = ohres::app::ReportFormat::Json; break;
            case OHRES_FORMAT_CSV: f = ohres::app::ReportFormat::Csv; break;
            default: throw ohres::ConfigError("unknown report format " + std::to_string(static_cast<int>(format)));
        }
        const auto& s = scenario->sizing();
        if (solution->solution.horizon() != s.horizon()) {
            throw ohres::ConfigError("solution horizon does not match the scenario");
        }
        *out = duplicate(ohres::app::render_report(s, solution->solution, f));
        return OHRES_OK;
    });
}

double ohres_solution_objective(const ohres_solution* solution)
{
    return solution ? solution->solution.objective : 0.0;
}

int64_t ohres_solution_count(const ohres_solution* solution, ohres_resource resource)
{
    if (!solution || !valid_resource(resource)) return -1;
    return solution->solution.counts[static_cast<std::size_t>(resource)];
}

double ohres_solution_bess_kwh(const ohres_solution* solution)
{
    return solution ? solution->solution.e_bess : 0.0;
}

size_t ohres_solution_horizon(const ohres_solution* solution)
{
    return solution ? solution->solution.horizon() : 0;
}

int64_t ohres_solution_nodes(const ohres_solution* solution)
{
    return solution ? solution->solution.diagnostics.nodes : 0;
}

double ohres_solution_gap(const ohres_solution* solution)
{
    return solution ? solution->solution.diagnostics.gap : 0.0;
}

int ohres_solution_optimal(const ohres_solution* solution)
{
    return solution && solution->solution.diagnostics.status == ohres::model::SolveStatus::Optimal ? 1 : 0;
}

ohres_status ohres_check(const ohres_scenario* scenario, const ohres_solution* solution, char** report)
{
    if (!scenario) return null_argument("scenario");
    if (!solution) return null_argument("solution");
    if (report) *report = nullptr;
    return guarded([&] {
        const auto& s = scenario->sizing();
        const auto result =
            ohres::model::validate_solution(s, solution->solution, scenario->file.validation_tolerance);
        const std::string text = ohres::app::render_validation(result);
        if (report) *report = duplicate(text);
        if (!result.passed()) return fail(OHRES_ERR_VALIDATION, "solution failed validation");
        return OHRES_OK;
    });
}

ohres_status ohres_oracle(const ohres_scenario* scenario, int* agree, char** report)
{
    if (!scenario) return null_argument("scenario");
    if (agree) *agree = 0;
    if (report) *report = nullptr;
    return guarded([&] {
        const auto c = ohres::app::compare_with_oracle(scenario->sizing(), scenario->file.solver,
                                                       scenario->file.enumeration_budget);
        if (agree) *agree = c.agree ? 1 : 0;
        if (report) *report = duplicate(c.text);
        if (!c.agree) return fail(OHRES_ERR_VALIDATION, "branch-and-bound and enumeration disagree");
        if (!c.oracle.feasible) return fail(OHRES_ERR_INFEASIBLE, "both methods find the scenario infeasible");
        return OHRES_OK;
    });
}

ohres_status ohres_unit_lifetime_cost(const ohres_scenario* scenario, ohres_resource resource, double* out)
{
    if (!scenario) return null_argument("scenario");
    if (!out) return null_argument("out");
    if (!valid_resource(resource)) return fail(OHRES_ERR_CONFIG, "unknown resource");
    return guarded([&] {
        *out = ohres::model::unit_lifetime_cost(scenario->file.costs, static_cast<ohres::model::Resource>(resource));
        return OHRES_OK;
    });
}

ohres_status ohres_bess_kwh_lifetime_cost(const ohres_scenario* scenario, double* out)
{
    if (!scenario) return null_argument("scenario");
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = ohres::model::bess_kwh_lifetime_cost(scenario->file.costs);
        return OHRES_OK;
    });
}

}  // extern "C"
