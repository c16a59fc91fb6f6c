#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <nlohmann/json.hpp>

#include "ohres/app.hpp"
#include "ohres/error.hpp"
#include "support.hpp"

using namespace ohres;
using namespace ohres::app;
using testsupport::source_path;

namespace {

ScenarioFile scenario(const std::string& name)
{
    return load_scenario(source_path("scenarios/" + name));
}

SolveOutcome solve_file(const std::string& name)
{
    const auto file = scenario(name);
    return solve_scenario(sizing_scenario(file), file.solver, file.validation_tolerance);
}

}  // namespace

TEST_CASE("scenario parsing")
{
    const auto s = scenario("toy_t2.json");
    CHECK(s.region == "toy_t2");
    CHECK(s.bounds[model::Resource::Owt] == 5);
    CHECK_FALSE(s.bess.enabled);
    CHECK(s.inline_profiles.at("load").size() == 2);

    CHECK_THROWS_AS(parse_scenario(R"({"region": "x", "colour": 1})", "."), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"region": 5})", "."), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"bess": {"soc_min": "low"}})", "."), ConfigError);
    CHECK_THROWS_AS(parse_scenario("not json", "."), ConfigError);
    CHECK_THROWS_AS(load_scenario(source_path("scenarios/missing.json")), Error);

    const auto d = parse_scenario(R"({"region": "d"})", ".");
    CHECK(d.costs.owt.capital == 16038767);
    CHECK(d.costs.bess_degradation == 0.0485);
}

TEST_CASE("profiles from the raw datasets")
{
    const auto s = scenario("datasets_kodiak.json");
    const auto set = build_profiles(s);
    for (const char* name : {"wec", "tec", "owt", "fpv", "load"}) {
        REQUIRE(set.count(name) == 1);
        CHECK(set.at(name).hour_values.size() == 24);
    }
    for (double kw : set.at("owt").hour_values) CHECK(kw <= 8000.0);
    for (double kw : set.at("tec").hour_values) CHECK(kw <= 500.0);
    for (double kw : set.at("wec").hour_values) CHECK(kw <= 750.0);
    for (std::size_t h : {0, 1, 2, 3, 21, 22, 23}) CHECK(set.at("fpv").hour_values[h] == 0.0);

    const auto round = ingest::profiles_from_json(ingest::profiles_to_json(set));
    CHECK(round.at("owt").hour_values == set.at("owt").hour_values);
    CHECK(summarize_profiles(set).find("owt") != std::string::npos);
}

TEST_CASE("missing load is a configuration error")
{
    const auto s = parse_scenario(R"({"profiles": {"owt": [1, 2]}})", ".");
    CHECK_THROWS_AS(sizing_scenario(s), ConfigError);
}

TEST_CASE("toy and zero-load scenarios")
{
    const auto toy = solve_file("toy_t2.json");
    CHECK(toy.solution.objective == doctest::Approx(20.0));
    CHECK(toy.solution.count(model::Resource::Owt) == 2);
    CHECK(toy.validation.passed());

    const auto zero = solve_file("zero_load.json");
    CHECK(zero.solution.objective == 0.0);
    for (auto r : model::kResources) CHECK(zero.solution.count(r) == 0);
}

TEST_CASE("infeasible scenario names the short hours")
{
    const auto file = scenario("fpv_night_infeasible.json");
    const auto s = sizing_scenario(file);
    try {
        solve_scenario(s, file.solver);
        FAIL("expected infeasibility");
    } catch (const InfeasibleError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("load exceeds max possible supply") != std::string::npos);
        CHECK(msg.find("hour(s) 1, 2, 3, 4, 5") != std::string::npos);
        CHECK(msg.find("24") != std::string::npos);
    }
}

TEST_CASE("default scenario solves and validates")
{
    const auto out = solve_file("default_costs.json");
    CHECK(out.solution.diagnostics.status == model::SolveStatus::Optimal);
    CHECK(out.validation.passed());
    CHECK(out.validation.objective_relative_discrepancy <= 1e-9);
    CHECK(out.solution.count(model::Resource::Owt) > 0);
}

TEST_CASE("solution documents are stable and round-trip")
{
    const auto file = scenario("oracle_t4.json");
    const auto s = sizing_scenario(file);
    const auto a = solution_to_json(file.region, solve_scenario(s, file.solver).solution);
    const auto b = solution_to_json(file.region, solve_scenario(s, file.solver).solution);
    CHECK(a == b);

    std::string region;
    const auto back = solution_from_json(a, &region);
    CHECK(region == file.region);
    CHECK(solution_to_json(region, back) == a);
    CHECK(model::validate_solution(s, back).passed());

    auto doc = nlohmann::json::parse(a);
    doc["counts"]["owt"] = 1.5;
    CHECK_THROWS_AS(solution_from_json(doc.dump()), ConfigError);
    doc = nlohmann::json::parse(a);
    doc["schedule"]["energy"] = "x";
    CHECK_THROWS_AS(solution_from_json(doc.dump()), ConfigError);
}

TEST_CASE("tampered solutions fail validation")
{
    const auto file = scenario("oracle_t4.json");
    const auto s = sizing_scenario(file);
    const auto good = solve_scenario(s, file.solver).solution;

    auto fewer = good;
    fewer.counts[model::index_of(model::Resource::Owt)] = 0;
    fewer.counts[model::index_of(model::Resource::Tec)] = 0;
    const auto bal = model::validate_solution(s, fewer);
    CHECK_FALSE(bal.passed());
    CHECK(render_validation(bal).find("validation: FAIL") != std::string::npos);

    auto priced = good;
    priced.objective *= 1.01;
    const auto obj = model::validate_solution(s, priced);
    CHECK(obj.constraints_ok());
    CHECK_FALSE(obj.passed());

    CHECK(render_validation(model::validate_solution(s, good)).find("validation: PASS") != std::string::npos);
}

TEST_CASE("reports")
{
    const auto file = scenario("oracle_t4.json");
    const auto s = sizing_scenario(file);
    const auto sol = solve_scenario(s, file.solver).solution;

    const auto csv = render_report(s, sol, ReportFormat::Csv);
    CHECK(csv.rfind("hour,load_kw,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

    const auto js = nlohmann::json::parse(render_report(s, sol, ReportFormat::Json));
    CHECK(js.contains("breakdown"));
    CHECK(js.at("dispatch").size() == 4);

    CHECK_FALSE(render_report(s, sol, ReportFormat::Text).empty());
    CHECK(parse_report_format("csv") == ReportFormat::Csv);
    CHECK_THROWS_AS(parse_report_format("xml"), ConfigError);
}

TEST_CASE("oracle comparison")
{
    const auto file = scenario("oracle_t4.json");
    const auto s = sizing_scenario(file);
    const auto c = compare_with_oracle(s, file.solver, file.enumeration_budget);
    CHECK(c.agree);
    CHECK(c.verdicts_agree);
    CHECK(c.relative_difference <= kOracleAgreementTolerance);
    CHECK(c.text.find("agreement: yes") != std::string::npos);

    const auto big = sizing_scenario(scenario("default_costs.json"));
    CHECK_THROWS_AS(compare_with_oracle(big, file.solver), BudgetError);
}
