// Command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ohres/ohres.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kValidation = 3, kLimit = 4 };

int exit_code(ohres_status s)
{
    switch (s) {
        case OHRES_OK: return kOk;
        case OHRES_ERR_INFEASIBLE: return kInfeasible;
        case OHRES_ERR_VALIDATION: return kValidation;
        case OHRES_ERR_LIMIT: return kLimit;
        default: return kUsage;
    }
}

int report_failure(ohres_status s)
{
    std::cerr << "error (" << ohres_status_name(s) << "): " << ohres_last_error() << "\n";
    return exit_code(s);
}

// Owns a string handed out by the library.
struct Text {
    char* p = nullptr;
    ~Text() { ohres_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

struct Scenario {
    ohres_scenario* p = nullptr;
    ~Scenario() { ohres_scenario_free(p); }
};

struct Solution {
    ohres_solution* p = nullptr;
    ~Solution() { ohres_solution_free(p); }
};

bool write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return false;
    }
    return true;
}

std::optional<std::string> read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Options {
    std::string scenario;
    std::string out;
    std::string solution;
    std::string report;
    std::string format = "text";
    std::optional<double> gap;
    std::optional<std::int64_t> node_limit;
};

ohres_format to_format(const std::string& f)
{
    if (f == "json") return OHRES_FORMAT_JSON;
    if (f == "csv") return OHRES_FORMAT_CSV;
    return OHRES_FORMAT_TEXT;
}

ohres_status open_scenario(const Options& o, Scenario& s)
{
    ohres_status st = ohres_scenario_load(o.scenario.c_str(), &s.p);
    if (st != OHRES_OK) return st;
    if (o.gap) st = ohres_scenario_set_gap(s.p, *o.gap);
    if (st == OHRES_OK && o.node_limit) st = ohres_scenario_set_node_limit(s.p, *o.node_limit);
    return st;
}

int cmd_profiles(const Options& o)
{
    Scenario s;
    if (auto st = open_scenario(o, s); st != OHRES_OK) return report_failure(st);
    Text doc, summary;
    if (auto st = ohres_profiles_build(s.p, &doc.p, &summary.p); st != OHRES_OK) return report_failure(st);
    if (o.out.empty()) {
        std::cout << doc.str();
        std::cerr << summary.str();
    } else {
        if (!write_file(o.out, doc.str())) return kUsage;
        std::cout << summary.str();
    }
    return kOk;
}

int cmd_solve(const Options& o)
{
    Scenario s;
    if (auto st = open_scenario(o, s); st != OHRES_OK) return report_failure(st);
    Solution sol;
    if (auto st = ohres_solve(s.p, &sol.p); st != OHRES_OK) return report_failure(st);

    Text doc, report;
    if (auto st = ohres_solution_to_json(sol.p, &doc.p); st != OHRES_OK) return report_failure(st);
    if (auto st = ohres_solution_report(s.p, sol.p, to_format(o.format), &report.p); st != OHRES_OK) {
        return report_failure(st);
    }
    if (!o.out.empty() && !write_file(o.out, doc.str())) return kUsage;
    if (!o.report.empty()) {
        if (!write_file(o.report, report.str())) return kUsage;
    } else {
        std::cout << report.str();
    }
    if (!ohres_solution_optimal(sol.p)) {
        std::cerr << "warning: solver limit reached, relative gap " << ohres_solution_gap(sol.p) << "\n";
        return kLimit;
    }
    return kOk;
}

int cmd_check(const Options& o)
{
    Scenario s;
    if (auto st = open_scenario(o, s); st != OHRES_OK) return report_failure(st);
    const auto text = read_file(o.solution);
    if (!text) {
        std::cerr << "error: cannot open " << o.solution << "\n";
        return kUsage;
    }
    Solution sol;
    if (auto st = ohres_solution_parse(text->c_str(), &sol.p); st != OHRES_OK) return report_failure(st);
    Text report;
    const ohres_status st = ohres_check(s.p, sol.p, &report.p);
    if (st != OHRES_OK && st != OHRES_ERR_VALIDATION) return report_failure(st);
    std::cout << report.str();
    return exit_code(st);
}

int cmd_oracle(const Options& o)
{
    Scenario s;
    if (auto st = open_scenario(o, s); st != OHRES_OK) return report_failure(st);
    Text report;
    const ohres_status st = ohres_oracle(s.p, nullptr, &report.p);
    if (!report.p) return report_failure(st);
    std::cout << report.str();
    return exit_code(st);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Offshore hybrid microgrid sizing"};
    app.require_subcommand(1);
    Options o;

    auto scenario_flag = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", o.scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
    };
    auto solver_flags = [&](CLI::App* cmd) {
        cmd->add_option("--gap", o.gap, "relative optimality gap");
        cmd->add_option("--node-limit", o.node_limit, "branch-and-bound node limit");
    };

    auto* profiles = app.add_subcommand("profiles", "build typical-day profiles from raw datasets");
    scenario_flag(profiles);
    profiles->add_option("--out", o.out, "write the profiles document here (default stdout)");

    auto* solve = app.add_subcommand("solve", "size the microgrid and print a report");
    scenario_flag(solve);
    solver_flags(solve);
    solve->add_option("--out", o.out, "write the solution document here");
    solve->add_option("--report", o.report, "write the report here instead of stdout");
    solve->add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "json", "csv"}));

    auto* check = app.add_subcommand("check", "validate a solution document against a scenario");
    scenario_flag(check);
    check->add_option("--solution", o.solution, "solution JSON file")->required();

    auto* oracle = app.add_subcommand("oracle", "compare branch-and-bound with exhaustive enumeration");
    scenario_flag(oracle);
    solver_flags(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (*profiles) return cmd_profiles(o);
    if (*solve) return cmd_solve(o);
    if (*check) return cmd_check(o);
    return cmd_oracle(o);
}
