#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "ohres/ohres.h"

namespace {

std::string scenario_path(const char* name)
{
    return std::string(OHRES_SOURCE_DIR) + "/scenarios/" + name;
}

ohres_scenario* load(const char* name)
{
    ohres_scenario* s = nullptr;
    REQUIRE(ohres_scenario_load(scenario_path(name).c_str(), &s) == OHRES_OK);
    REQUIRE(s != nullptr);
    return s;
}

std::string take(char* s)
{
    std::string out = s ? s : "";
    ohres_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("status names and errors")
{
    CHECK(std::strcmp(ohres_status_name(OHRES_OK), "ok") == 0);
    CHECK(std::strlen(ohres_status_name(OHRES_ERR_INFEASIBLE)) > 0);

    ohres_scenario* s = nullptr;
    CHECK(ohres_scenario_load("/nonexistent/scenario.json", &s) != OHRES_OK);
    CHECK(s == nullptr);
    CHECK(std::strlen(ohres_last_error()) > 0);

    CHECK(ohres_scenario_parse("{\"colour\": 1}", ".", &s) == OHRES_ERR_CONFIG);
    CHECK(ohres_scenario_parse(nullptr, ".", &s) == OHRES_ERR_CONFIG);
    ohres_scenario_free(nullptr);
    ohres_solution_free(nullptr);
    ohres_string_free(nullptr);
}

TEST_CASE("unit costs through the C interface")
{
    ohres_scenario* s = nullptr;
    REQUIRE(ohres_scenario_parse("{\"region\": \"costs\"}", ".", &s) == OHRES_OK);
    double owt = 0;
    double fpv = 0;
    double kwh = 0;
    CHECK(ohres_unit_lifetime_cost(s, OHRES_OWT, &owt) == OHRES_OK);
    CHECK(ohres_unit_lifetime_cost(s, OHRES_FPV, &fpv) == OHRES_OK);
    CHECK(ohres_bess_kwh_lifetime_cost(s, &kwh) == OHRES_OK);
    CHECK(owt == 22710240.0);
    CHECK(fpv == 1047.0);
    CHECK(kwh == doctest::Approx(905.5));
    CHECK(ohres_unit_lifetime_cost(s, static_cast<ohres_resource>(9), &owt) == OHRES_ERR_CONFIG);
    ohres_scenario_free(s);
}

TEST_CASE("solve, serialize and check")
{
    auto* s = load("toy_t2.json");
    ohres_solution* sol = nullptr;
    REQUIRE(ohres_solve(s, &sol) == OHRES_OK);
    CHECK(ohres_solution_objective(sol) == doctest::Approx(20.0));
    CHECK(ohres_solution_count(sol, OHRES_OWT) == 2);
    CHECK(ohres_solution_count(sol, OHRES_WEC) == 0);
    CHECK(ohres_solution_bess_kwh(sol) == 0.0);
    CHECK(ohres_solution_horizon(sol) == 2);
    CHECK(ohres_solution_optimal(sol) == 1);
    CHECK(ohres_solution_nodes(sol) >= 1);
    CHECK(ohres_solution_gap(sol) <= 1e-6);

    char* doc = nullptr;
    REQUIRE(ohres_solution_to_json(sol, &doc) == OHRES_OK);
    const std::string text = take(doc);
    CHECK(text.find("\"toy_t2\"") != std::string::npos);

    ohres_solution* back = nullptr;
    REQUIRE(ohres_solution_parse(text.c_str(), &back) == OHRES_OK);
    char* report = nullptr;
    CHECK(ohres_check(s, back, &report) == OHRES_OK);
    CHECK(take(report).find("validation: PASS") != std::string::npos);

    char* csv = nullptr;
    REQUIRE(ohres_solution_report(s, sol, OHRES_FORMAT_CSV, &csv) == OHRES_OK);
    CHECK(take(csv).rfind("hour,", 0) == 0);

    std::string tampered = text;
    const auto pos = tampered.find("\"owt\": 2");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 8, "\"owt\": 1");
    ohres_solution* bad = nullptr;
    REQUIRE(ohres_solution_parse(tampered.c_str(), &bad) == OHRES_OK);
    CHECK(ohres_check(s, bad, nullptr) == OHRES_ERR_VALIDATION);

    CHECK(ohres_solution_parse("{}", &bad) == OHRES_ERR_CONFIG);

    ohres_solution_free(bad);
    ohres_solution_free(back);
    ohres_solution_free(sol);
    ohres_scenario_free(s);
}

TEST_CASE("infeasible scenario")
{
    auto* s = load("fpv_night_infeasible.json");
    ohres_solution* sol = nullptr;
    CHECK(ohres_solve(s, &sol) == OHRES_ERR_INFEASIBLE);
    CHECK(sol == nullptr);
    CHECK(std::string(ohres_last_error()).find("hour(s)") != std::string::npos);
    ohres_scenario_free(s);
}

TEST_CASE("oracle and limits")
{
    auto* s = load("oracle_t4.json");
    int agree = 0;
    char* report = nullptr;
    CHECK(ohres_oracle(s, &agree, &report) == OHRES_OK);
    CHECK(agree == 1);
    CHECK(take(report).find("agreement: yes") != std::string::npos);
    ohres_scenario_free(s);

    auto* big = load("default_costs.json");
    CHECK(ohres_oracle(big, &agree, nullptr) == OHRES_ERR_LIMIT);
    CHECK(ohres_scenario_set_gap(big, -1.0) == OHRES_ERR_CONFIG);
    CHECK(ohres_scenario_set_node_limit(big, 0) == OHRES_ERR_CONFIG);
    CHECK(ohres_scenario_set_gap(big, 1e-4) == OHRES_OK);
    ohres_solution* sol = nullptr;
    REQUIRE(ohres_solve(big, &sol) == OHRES_OK);
    CHECK(ohres_solution_count(sol, OHRES_OWT) > 0);
    ohres_solution_free(sol);
    ohres_scenario_free(big);
}

TEST_CASE("profiles through the C interface")
{
    auto* s = load("datasets_kodiak.json");
    char* doc = nullptr;
    char* summary = nullptr;
    REQUIRE(ohres_profiles_build(s, &doc, &summary) == OHRES_OK);
    CHECK(take(doc).find("\"fpv\"") != std::string::npos);
    CHECK_FALSE(take(summary).empty());
    ohres_scenario_free(s);
}
