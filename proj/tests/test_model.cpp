#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ohres/error.hpp"
#include "ohres/model.hpp"
#include "ohres/solver.hpp"
#include "support.hpp"

using namespace ohres;
using namespace ohres::model;
using testsupport::Gen;

namespace {

SizingScenario day_scenario(double load = 50000.0)
{
    SizingScenario s;
    s.load.assign(24, load);
    for (Resource r : kResources) s.generation[index_of(r)].assign(24, 0.0);
    s.generation[index_of(Resource::Owt)].assign(24, 4000.0);
    return s;
}

struct Solved {
    MilpProblem problem;
    solver::MilpResult result;
    SizingSolution solution;
};

Solved solve(const SizingScenario& s)
{
    Solved out{assemble_milp(s), {}, {}};
    out.result = solver::solve_milp(out.problem);
    if (out.result.has_solution) {
        out.solution = extract_solution(s, out.problem, out.result.values);
        out.solution.objective = out.result.objective;
    }
    return out;
}

}  // namespace

TEST_CASE("default unit costs")
{
    const auto b = CostBook::defaults();
    CHECK(b.wec.precommissioning == 126000);
    CHECK(b.wec.capital == 6300000);
    CHECK(b.wec.om_per_year == 272000);
    CHECK(b.wec.decommissioning == 1000000);
    CHECK(b.tec.precommissioning == 126000);
    CHECK(b.tec.capital == 6598500);
    CHECK(b.tec.om_per_year == 259047);
    CHECK(b.tec.decommissioning == 0);
    CHECK(b.owt.precommissioning == 367200);
    CHECK(b.owt.capital == 16038767);
    CHECK(b.owt.om_per_year == 259047);
    CHECK(b.owt.decommissioning == 1123333);
    CHECK(b.fpv.precommissioning == 132);
    CHECK(b.fpv.capital == 520);
    CHECK(b.fpv.om_per_year == 18);
    CHECK(b.fpv.decommissioning == 35);
    CHECK(b.bess.precommissioning == 310);
    CHECK(b.bess.capital == 150);
    CHECK(b.bess.om_per_year == 10);
    CHECK(b.bess.decommissioning == 100);
    CHECK(b.lifetime_years == 20);
    CHECK(b.bess_degradation == 0.0485);
}

TEST_CASE("subsystem lifetime cost")
{
    const auto b = CostBook::defaults();
    CHECK(subsystem_lifetime_cost(1, b.owt, 20) == 367200.0 + 16038767.0 + 259047.0 * 20 + 1123333.0);
    CHECK(subsystem_lifetime_cost(1, b.owt, 20) == 22710240.0);
    CHECK(subsystem_lifetime_cost(1, b.fpv, 20) == 1047.0);
    CHECK(subsystem_lifetime_cost(1, b.bess, 20, 0.05) == doctest::Approx(910.0).epsilon(1e-15));
    CHECK(subsystem_lifetime_cost(0, b.wec, 20) == 0.0);
    CHECK(subsystem_lifetime_cost(13, b.owt, 20) == 295233120.0);
    CHECK(unit_lifetime_cost(b, Resource::Owt) == 22710240.0);
    CHECK(bess_kwh_lifetime_cost(b) == doctest::Approx(760.0 + 3000.0 * 0.0485));

    const auto t = subsystem_cost_terms(2, b.bess, 20, 0.05);
    CHECK(t.capital == doctest::Approx(2 * 150 * 2.0));
    CHECK(t.om == doctest::Approx(2 * 10 * 20.0));
    CHECK(t.total() == doctest::Approx(1820.0));
}

TEST_CASE("parameter validation")
{
    auto b = CostBook::defaults();
    b.lifetime_years = 0;
    CHECK_THROWS_AS(b.validate(), ParameterError);
    b = CostBook::defaults();
    b.owt.capital = -1;
    CHECK_THROWS_AS(b.validate(), ParameterError);
    BessParams p;
    p.soc_min = 0.9;
    p.soc_max = 0.1;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    auto s = day_scenario();
    s.generation[0].pop_back();
    CHECK_THROWS_AS(assemble_milp(s), AssemblyError);
}

TEST_CASE("assembly structure for a 24-hour day")
{
    const auto p = assemble_milp(day_scenario());
    CHECK(p.num_columns() == 150);
    CHECK(p.count_kind(VarKind::Integer) == 4);
    CHECK(p.count_kind(VarKind::Continuous) == 98);
    CHECK(p.count_kind(VarKind::Binary) == 48);
    const auto tally = p.family_tally();
    CHECK(tally.at("balance") == 24);
    CHECK(tally.at("energy") == 24);
    CHECK(tally.at("cycle") == 1);
    CHECK(tally.at("soc") == 50);
    CHECK(tally.at("exclusion") == 24);
    CHECK(tally.at("discharge_limit") == 24);
    CHECK(tally.at("charge_limit") == 24);
    CHECK(tally.size() == 7);
    CHECK(p.num_rows() == 24 + 24 + 1 + 50 + 24 + 24 + 24);
    CHECK(p.has_column("N_OWT"));
    CHECK(p.has_column("E_BESS"));
    CHECK(p.has_column("U_disc[24]"));
    CHECK(p.objective()[p.column("N_OWT")] == 22710240.0);
}

TEST_CASE("zero load costs nothing")
{
    auto s = day_scenario(0.0);
    s.bess.soc_min = 0.0;
    const auto r = solve(s);
    REQUIRE(r.result.has_solution);
    CHECK(r.result.objective == 0.0);
    for (double x : r.result.values) CHECK(x == 0.0);
}

TEST_CASE("validation flags constructed violations")
{
    const auto s = day_scenario();
    auto r = solve(s);
    REQUIRE(r.result.has_solution);
    const auto clean = validate_solution(s, r.solution);
    CHECK(clean.passed());

    auto both = r.solution;
    both.u_charge[2] = 1;
    both.u_discharge[2] = 1;
    const auto excl = validate_solution(s, both);
    CHECK_FALSE(excl.passed());
    const auto* f = excl.family("exclusion");
    REQUIRE(f != nullptr);
    REQUIRE(f->flagged.size() == 1);
    CHECK(f->flagged[0] == 3);

    auto off = r.solution;
    off.objective += 1.0;
    const auto obj = validate_solution(s, off);
    CHECK(obj.constraints_ok());
    CHECK_FALSE(obj.objective_ok());
    CHECK(obj.objective_discrepancy == doctest::Approx(1.0));

    auto fewer = r.solution;
    fewer.counts[index_of(Resource::Owt)] -= 1;
    const auto bal = validate_solution(s, fewer);
    CHECK_FALSE(bal.constraints_ok());
    CHECK_FALSE(bal.family("balance")->flagged.empty());
}

TEST_CASE("generation matching the load needs no storage or curtailment")
{
    Gen g(41);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = g.integer(1, 12);
        const double load = g.uniform(10.0, 60000.0);
        SizingScenario s;
        const std::size_t T = static_cast<std::size_t>(g.integer(2, 24));
        s.load.assign(T, load);
        for (Resource r : kResources) s.generation[index_of(r)].assign(T, 0.0);
        const auto r = static_cast<Resource>(g.integer(0, 3));
        s.generation[index_of(r)].assign(T, load / n);
        s.bounds[r] = n + g.integer(0, 10);
        const auto out = solve(s);
        REQUIRE(out.result.has_solution);
        CHECK(out.solution.count(r) == n);
        CHECK(out.solution.e_bess == doctest::Approx(0.0));
        for (double c : out.solution.p_curtail) CHECK(c == doctest::Approx(0.0).epsilon(1e-9).scale(load));
    }
}

TEST_CASE("property: cost scaling")
{
    Gen g(43);
    int solved = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto s = testsupport::small_scenario(g);
        const double k = g.uniform(0.1, 50.0);
        auto scaled = s;
        scaled.costs = s.costs.scaled(k);
        const auto a = assemble_milp(s);
        const auto b = assemble_milp(scaled);
        for (std::size_t j = 0; j < a.num_columns(); ++j) {
            CHECK(b.objective()[j] == doctest::Approx(k * a.objective()[j]).epsilon(1e-15));
        }
        const auto ra = solver::solve_milp(a);
        const auto rb = solver::solve_milp(b);
        REQUIRE(ra.has_solution == rb.has_solution);
        if (!ra.has_solution) continue;
        ++solved;
        CHECK(rb.objective == doctest::Approx(k * ra.objective).epsilon(1e-6));
    }
    CHECK(solved > 30);
}

TEST_CASE("property: stored energy telescopes over the cycle")
{
    Gen g(47);
    int with_storage = 0;
    for (int trial = 0; trial < 80; ++trial) {
        auto s = testsupport::small_scenario(g);
        s.bess.enabled = true;
        const auto r = solve(s);
        if (!r.result.has_solution) continue;
        const auto& x = r.solution;
        double net = 0.0;
        double scale = 1.0;
        for (std::size_t t = 0; t < x.horizon(); ++t) {
            net += s.bess.charge_efficiency * x.p_charge[t] - x.p_discharge[t] / s.bess.discharge_efficiency;
            scale = std::max({scale, x.p_charge[t], x.p_discharge[t]});
        }
        CHECK(std::fabs(net) <= 1e-7 * scale);
        CHECK(x.energy.back() == doctest::Approx(x.e_initial).epsilon(1e-9).scale(scale));
        if (x.e_bess > 0) ++with_storage;
    }
    CHECK(with_storage > 0);
}

TEST_CASE("property: curtailment never hurts")
{
    Gen g(53);
    for (int trial = 0; trial < 60; ++trial) {
        auto s = testsupport::small_scenario(g);
        s.allow_curtailment = true;
        auto forced = s;
        forced.allow_curtailment = false;
        const auto a = solver::solve_milp(assemble_milp(s));
        const auto b = solver::solve_milp(assemble_milp(forced));
        if (b.has_solution) {
            REQUIRE(a.has_solution);
            CHECK(b.objective >= a.objective - 1e-6 * std::max(1.0, std::fabs(a.objective)));
        }
    }
}

TEST_CASE("property: reported objective matches the recomputation")
{
    Gen g(59);
    for (int trial = 0; trial < 60; ++trial) {
        const auto s = testsupport::small_scenario(g);
        const auto r = solve(s);
        if (!r.result.has_solution) continue;
        const auto report = validate_solution(s, r.solution);
        CHECK(report.objective_relative_discrepancy <= 1e-9);
        CHECK(report.passed());
        CHECK(cost_breakdown(s, r.solution).total() == doctest::Approx(r.solution.objective).epsilon(1e-9));
    }
}
