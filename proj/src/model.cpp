#include "ohres/model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ohres/error.hpp"

namespace ohres::model {

std::string_view resource_key(Resource r)
{
    switch (r) {
        case Resource::Wec: return "wec";
        case Resource::Tec: return "tec";
        case Resource::Owt: return "owt";
        case Resource::Fpv: return "fpv";
    }
    return "?";
}

std::string_view resource_label(Resource r)
{
    switch (r) {
        case Resource::Wec: return "WEC";
        case Resource::Tec: return "TEC";
        case Resource::Owt: return "OWT";
        case Resource::Fpv: return "FPV";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Costs

void SubsystemCost::validate(std::string_view what) const
{
    if (precommissioning < 0.0 || capital < 0.0 || om_per_year < 0.0 || decommissioning < 0.0) {
        throw ParameterError(std::string(what) + " costs must be non-negative");
    }
}

CostBook CostBook::defaults()
{
    CostBook b;
    b.wec = {126'000.0, 6'300'000.0, 272'000.0, 1'000'000.0};
    b.tec = {126'000.0, 6'598'500.0, 259'047.0, 0.0};
    b.owt = {367'200.0, 16'038'767.0, 259'047.0, 1'123'333.0};
    b.fpv = {132.0, 520.0, 18.0, 35.0};
    b.bess = {310.0, 150.0, 10.0, 100.0};
    return b;
}

const SubsystemCost& CostBook::unit(Resource r) const
{
    switch (r) {
        case Resource::Wec: return wec;
        case Resource::Tec: return tec;
        case Resource::Owt: return owt;
        case Resource::Fpv: return fpv;
    }
    return wec;
}

SubsystemCost& CostBook::unit(Resource r)
{
    return const_cast<SubsystemCost&>(std::as_const(*this).unit(r));
}

CostBook CostBook::scaled(double factor) const
{
    CostBook b = *this;
    for (SubsystemCost* c : {&b.wec, &b.tec, &b.owt, &b.fpv, &b.bess}) {
        c->precommissioning *= factor;
        c->capital *= factor;
        c->om_per_year *= factor;
        c->decommissioning *= factor;
    }
    return b;
}

void CostBook::validate() const
{
    for (Resource r : kResources) unit(r).validate(resource_label(r));
    bess.validate("BESS");
    if (!(lifetime_years > 0.0)) throw ParameterError("lifetime must be positive");
    if (!(bess_degradation >= 0.0)) throw ParameterError("BESS degradation factor must be non-negative");
}

CostTerms subsystem_cost_terms(double quantity, const SubsystemCost& cost, double lifetime_years,
                               std::optional<double> degradation)
{
    const double uplift = degradation ? 1.0 + *degradation * lifetime_years : 1.0;
    CostTerms t;
    t.precommissioning = quantity * cost.precommissioning;
    t.capital = quantity * (cost.capital * uplift);
    t.om = quantity * (cost.om_per_year * lifetime_years);
    t.decommissioning = quantity * cost.decommissioning;
    return t;
}

double subsystem_lifetime_cost(double quantity, const SubsystemCost& cost, double lifetime_years,
                               std::optional<double> degradation)
{
    const double uplift = degradation ? 1.0 + *degradation * lifetime_years : 1.0;
    return quantity *
           (cost.precommissioning + cost.capital * uplift + cost.om_per_year * lifetime_years + cost.decommissioning);
}

double unit_lifetime_cost(const CostBook& book, Resource r)
{
    return subsystem_lifetime_cost(1.0, book.unit(r), book.lifetime_years);
}

double bess_kwh_lifetime_cost(const CostBook& book)
{
    return subsystem_lifetime_cost(1.0, book.bess, book.lifetime_years, book.bess_degradation);
}

// ---------------------------------------------------------------------------
// Scenario

void BessParams::validate() const
{
    if (!(charge_efficiency > 0.0 && charge_efficiency <= 1.0)) {
        throw ParameterError("charge efficiency must lie in (0, 1]");
    }
    if (!(discharge_efficiency > 0.0 && discharge_efficiency <= 1.0)) {
        throw ParameterError("discharge efficiency must lie in (0, 1]");
    }
    if (!(soc_min >= 0.0 && soc_min < soc_max && soc_max <= 1.0)) {
        throw ParameterError("SOC window must satisfy 0 <= soc_min < soc_max <= 1");
    }
    if (p_max_charge && !(*p_max_charge >= 0.0)) throw ParameterError("charge power limit must be >= 0");
    if (p_max_discharge && !(*p_max_discharge >= 0.0)) throw ParameterError("discharge power limit must be >= 0");
    if (e_max && !(*e_max >= 0.0)) throw ParameterError("BESS energy cap must be >= 0");
}

double SizingScenario::load_peak() const
{
    return load.empty() ? 0.0 : *std::max_element(load.begin(), load.end());
}

double SizingScenario::charge_power_limit() const
{
    return bess.p_max_charge.value_or(kDefaultPowerLimitFraction * load_peak());
}

double SizingScenario::discharge_power_limit() const
{
    return bess.p_max_discharge.value_or(kDefaultPowerLimitFraction * load_peak());
}

void SizingScenario::validate() const
{
    const std::size_t T = horizon();
    if (T == 0) throw AssemblyError("load profile is empty");
    for (double v : load) {
        if (!std::isfinite(v) || v < 0.0) throw AssemblyError("load profile values must be finite and >= 0");
    }
    for (Resource r : kResources) {
        const auto& p = profile(r);
        if (p.size() != T) {
            throw AssemblyError(std::string(resource_label(r)) + " profile has " + std::to_string(p.size()) +
                                " values, expected " + std::to_string(T));
        }
        for (double v : p) {
            if (!std::isfinite(v) || v < 0.0) {
                throw AssemblyError(std::string(resource_label(r)) + " profile values must be finite and >= 0");
            }
        }
        if (!(bounds[r] >= 0.0) || !std::isfinite(bounds[r])) {
            throw AssemblyError(std::string(resource_label(r)) + " count bound must be finite and >= 0");
        }
    }
    costs.validate();
    bess.validate();
}

std::string_view to_string(SolveStatus s)
{
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::NodeLimit: return "node_limit";
        case SolveStatus::TimeLimit: return "time_limit";
    }
    return "?";
}

SolveStatus parse_solve_status(std::string_view s)
{
    for (auto st : {SolveStatus::Optimal, SolveStatus::Infeasible, SolveStatus::Unbounded, SolveStatus::NodeLimit,
                    SolveStatus::TimeLimit}) {
        if (to_string(st) == s) return st;
    }
    throw DataError("unknown solve status '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Assembly

std::string count_column(Resource r)
{
    return "N_" + std::string(resource_label(r));
}

std::string hourly_column(std::string_view stem, std::size_t t)
{
    return std::string(stem) + "[" + std::to_string(t) + "]";
}

MilpProblem assemble_milp(const SizingScenario& s)
{
    s.validate();
    const std::size_t T = s.horizon();
    const auto& bess = s.bess;
    MilpProblem p;

    std::array<std::size_t, 4> n{};
    for (Resource r : kResources) {
        n[index_of(r)] = p.add_variable(count_column(r), VarKind::Integer, 0.0, s.bounds[r],
                                        unit_lifetime_cost(s.costs, r));
    }
    double e_cap = bess.enabled ? bess.e_max.value_or(kInfinity) : 0.0;
    const std::size_t e_bess = p.add_variable("E_BESS", VarKind::Continuous, 0.0, e_cap,
                                              bess_kwh_lifetime_cost(s.costs));
    const std::size_t e_init = p.add_variable("E_initial", VarKind::Continuous, 0.0, kInfinity, 0.0);

    const double curt_cap = s.allow_curtailment ? kInfinity : 0.0;
    std::vector<std::size_t> e(T), pc(T), pd(T), pcurt(T), uc(T), ud(T);
    for (std::size_t t = 0; t < T; ++t) {
        e[t] = p.add_variable(hourly_column("E", t + 1), VarKind::Continuous, 0.0, kInfinity, 0.0);
        pc[t] = p.add_variable(hourly_column("P_char", t + 1), VarKind::Continuous, 0.0, kInfinity, 0.0);
        pd[t] = p.add_variable(hourly_column("P_disc", t + 1), VarKind::Continuous, 0.0, kInfinity, 0.0);
        pcurt[t] = p.add_variable(hourly_column("P_curt", t + 1), VarKind::Continuous, 0.0, curt_cap, 0.0);
    }
    for (std::size_t t = 0; t < T; ++t) {
        uc[t] = p.add_variable(hourly_column("U_char", t + 1), VarKind::Binary, 0.0, 1.0, 0.0);
        ud[t] = p.add_variable(hourly_column("U_disc", t + 1), VarKind::Binary, 0.0, 1.0, 0.0);
    }

    // Power balance: generation + discharge - charge - curtailment = load.
    for (std::size_t t = 0; t < T; ++t) {
        std::vector<Term> terms;
        for (Resource r : kResources) {
            const double unit = s.profile(r)[t];
            if (unit != 0.0) terms.push_back({n[index_of(r)], unit});
        }
        terms.push_back({pd[t], 1.0});
        terms.push_back({pc[t], -1.0});
        terms.push_back({pcurt[t], -1.0});
        p.add_constraint(hourly_column("balance", t + 1), "balance", std::move(terms), Relation::Equal, s.load[t]);
    }

    // Energy recursion with one-hour steps; E_0 is E_initial.
    for (std::size_t t = 0; t < T; ++t) {
        const std::size_t prev = t == 0 ? e_init : e[t - 1];
        p.add_constraint(hourly_column("energy", t + 1), "energy",
                         {{e[t], 1.0}, {prev, -1.0}, {pc[t], -bess.charge_efficiency},
                          {pd[t], 1.0 / bess.discharge_efficiency}},
                         Relation::Equal, 0.0);
    }

    p.add_constraint("cycle", "cycle", {{e_init, 1.0}, {e[T - 1], -1.0}}, Relation::Equal, 0.0);

    auto soc_rows = [&](std::size_t col, const std::string& label) {
        p.add_constraint("soc_max[" + label + "]", "soc", {{col, 1.0}, {e_bess, -bess.soc_max}},
                         Relation::LessEqual, 0.0);
        p.add_constraint("soc_min[" + label + "]", "soc", {{col, 1.0}, {e_bess, -bess.soc_min}},
                         Relation::GreaterEqual, 0.0);
    };
    soc_rows(e_init, "initial");
    for (std::size_t t = 0; t < T; ++t) soc_rows(e[t], std::to_string(t + 1));

    for (std::size_t t = 0; t < T; ++t) {
        p.add_constraint(hourly_column("exclusion", t + 1), "exclusion", {{uc[t], 1.0}, {ud[t], 1.0}},
                         Relation::LessEqual, 1.0);
    }
    const double pd_max = s.discharge_power_limit();
    const double pc_max = s.charge_power_limit();
    for (std::size_t t = 0; t < T; ++t) {
        p.add_constraint(hourly_column("discharge_limit", t + 1), "discharge_limit", {{pd[t], 1.0}, {ud[t], -pd_max}},
                         Relation::LessEqual, 0.0);
    }
    for (std::size_t t = 0; t < T; ++t) {
        p.add_constraint(hourly_column("charge_limit", t + 1), "charge_limit", {{pc[t], 1.0}, {uc[t], -pc_max}},
                         Relation::LessEqual, 0.0);
    }
    return p;
}

SizingSolution extract_solution(const SizingScenario& s, const MilpProblem& p, std::span<const double> x)
{
    if (x.size() != p.num_columns()) throw AssemblyError("primal vector length does not match the problem");
    const std::size_t T = s.horizon();
    auto value = [&](const std::string& name) { return x[p.column(name)]; };
    auto integer = [&](const std::string& name) { return static_cast<std::int64_t>(std::llround(value(name))); };

    SizingSolution sol;
    for (Resource r : kResources) sol.counts[index_of(r)] = integer(count_column(r));
    sol.e_bess = value("E_BESS");
    sol.e_initial = value("E_initial");
    for (std::size_t t = 1; t <= T; ++t) {
        sol.energy.push_back(value(hourly_column("E", t)));
        sol.p_charge.push_back(value(hourly_column("P_char", t)));
        sol.p_discharge.push_back(value(hourly_column("P_disc", t)));
        sol.p_curtail.push_back(value(hourly_column("P_curt", t)));
        sol.u_charge.push_back(static_cast<int>(integer(hourly_column("U_char", t))));
        sol.u_discharge.push_back(static_cast<int>(integer(hourly_column("U_disc", t))));
    }
    sol.objective = p.evaluate(std::vector<double>(x.begin(), x.end()));
    return sol;
}

// ---------------------------------------------------------------------------
// Independent validation

namespace {

class FamilyAccumulator {
public:
    FamilyAccumulator(std::string name, double tolerance) : tol_(tolerance) { check_.family = std::move(name); }

    // Relative violation `amount / scale` at hour `t` (0 = not hourly).
    void record(double amount, double scale, std::size_t t)
    {
        const double rel = std::max(amount, 0.0) / std::max(1.0, scale);
        check_.max_violation = std::max(check_.max_violation, rel);
        if (rel > tol_ && std::find(check_.flagged.begin(), check_.flagged.end(), t) == check_.flagged.end()) {
            check_.flagged.push_back(t);
        }
    }

    FamilyCheck take() { return std::move(check_); }

private:
    FamilyCheck check_;
    double tol_;
};

double max_abs(std::initializer_list<double> values)
{
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
}

}  // namespace

const FamilyCheck* ValidationReport::family(std::string_view name) const
{
    for (const auto& f : families) {
        if (f.family == name) return &f;
    }
    return nullptr;
}

double ValidationReport::max_violation() const
{
    double m = 0.0;
    for (const auto& f : families) m = std::max(m, f.max_violation);
    return m;
}

bool ValidationReport::constraints_ok() const
{
    return max_violation() <= tolerance;
}

bool ValidationReport::objective_ok() const
{
    return objective_relative_discrepancy <= objective_tolerance;
}

ValidationReport validate_solution(const SizingScenario& s, const SizingSolution& sol, double tolerance,
                                   double objective_tolerance)
{
    s.validate();
    const std::size_t T = s.horizon();
    if (sol.energy.size() != T || sol.p_charge.size() != T || sol.p_discharge.size() != T ||
        sol.p_curtail.size() != T || sol.u_charge.size() != T || sol.u_discharge.size() != T) {
        throw DataError("solution schedule length does not match the scenario horizon of " + std::to_string(T));
    }
    const auto& b = s.bess;

    FamilyAccumulator bounds("bounds", tolerance);
    FamilyAccumulator integrality("integrality", tolerance);
    FamilyAccumulator balance("balance", tolerance);
    FamilyAccumulator energy("energy", tolerance);
    FamilyAccumulator cycle("cycle", tolerance);
    FamilyAccumulator soc("soc", tolerance);
    FamilyAccumulator exclusion("exclusion", tolerance);
    FamilyAccumulator discharge("discharge_limit", tolerance);
    FamilyAccumulator charge("charge_limit", tolerance);

    for (Resource r : kResources) {
        const double c = static_cast<double>(sol.count(r));
        bounds.record(-c, 1.0, 0);
        bounds.record(c - s.bounds[r], s.bounds[r], 0);
    }
    bounds.record(-sol.e_bess, 1.0, 0);
    bounds.record(-sol.e_initial, 1.0, 0);
    const double e_cap = b.enabled ? b.e_max.value_or(kInfinity) : 0.0;
    if (std::isfinite(e_cap)) bounds.record(sol.e_bess - e_cap, e_cap, 0);

    for (std::size_t i = 0; i < T; ++i) {
        const std::size_t t = i + 1;
        for (double v : {sol.energy[i], sol.p_charge[i], sol.p_discharge[i], sol.p_curtail[i]}) bounds.record(-v, 1.0, t);
        if (!s.allow_curtailment) bounds.record(sol.p_curtail[i], 1.0, t);
        for (int u : {sol.u_charge[i], sol.u_discharge[i]}) integrality.record(u == 0 || u == 1 ? 0.0 : 1.0, 1.0, t);

        // Power balance.
        double supply = 0.0;
        double largest = max_abs({s.load[i], sol.p_charge[i], sol.p_discharge[i], sol.p_curtail[i]});
        for (Resource r : kResources) {
            const double g = static_cast<double>(sol.count(r)) * s.profile(r)[i];
            supply += g;
            largest = std::max(largest, std::fabs(g));
        }
        const double lhs = supply + sol.p_discharge[i] - sol.p_charge[i] - sol.p_curtail[i];
        balance.record(std::fabs(lhs - s.load[i]), largest, t);

        // Energy recursion.
        const double prev = i == 0 ? sol.e_initial : sol.energy[i - 1];
        const double stored = b.charge_efficiency * sol.p_charge[i];
        const double drawn = sol.p_discharge[i] / b.discharge_efficiency;
        energy.record(std::fabs((sol.energy[i] - prev) - (stored - drawn)),
                      max_abs({sol.energy[i], prev, stored, drawn}), t);

        // SOC window.
        const double hi = b.soc_max * sol.e_bess;
        const double lo = b.soc_min * sol.e_bess;
        soc.record(sol.energy[i] - hi, max_abs({sol.energy[i], hi}), t);
        soc.record(lo - sol.energy[i], max_abs({sol.energy[i], lo}), t);

        exclusion.record(static_cast<double>(sol.u_charge[i] + sol.u_discharge[i]) - 1.0, 1.0, t);

        const double pd_cap = sol.u_discharge[i] * s.discharge_power_limit();
        const double pc_cap = sol.u_charge[i] * s.charge_power_limit();
        discharge.record(sol.p_discharge[i] - pd_cap, max_abs({sol.p_discharge[i], pd_cap}), t);
        charge.record(sol.p_charge[i] - pc_cap, max_abs({sol.p_charge[i], pc_cap}), t);
    }
    cycle.record(std::fabs(sol.e_initial - sol.energy[T - 1]), max_abs({sol.e_initial, sol.energy[T - 1]}), 0);
    soc.record(sol.e_initial - b.soc_max * sol.e_bess, max_abs({sol.e_initial, b.soc_max * sol.e_bess}), 0);
    soc.record(b.soc_min * sol.e_bess - sol.e_initial, max_abs({sol.e_initial, b.soc_min * sol.e_bess}), 0);

    ValidationReport report;
    report.tolerance = tolerance;
    report.objective_tolerance = objective_tolerance;
    for (auto* acc : {&bounds, &integrality, &balance, &energy, &cycle, &soc, &exclusion, &discharge, &charge}) {
        report.families.push_back(acc->take());
    }
    report.objective_reported = sol.objective;
    report.objective_recomputed = cost_breakdown(s, sol).total();
    report.objective_discrepancy = std::fabs(report.objective_reported - report.objective_recomputed);
    report.objective_relative_discrepancy =
        report.objective_discrepancy / std::max(1.0, std::fabs(report.objective_recomputed));
    return report;
}

double CostBreakdown::total() const
{
    double sum = 0.0;
    for (const auto& g : generators) sum += g.total();
    return sum + bess.total();
}

CostBreakdown cost_breakdown(const SizingScenario& s, const SizingSolution& sol)
{
    CostBreakdown out;
    for (Resource r : kResources) {
        out.generators[index_of(r)] =
            subsystem_cost_terms(static_cast<double>(sol.count(r)), s.costs.unit(r), s.costs.lifetime_years);
    }
    out.bess = subsystem_cost_terms(sol.e_bess, s.costs.bess, s.costs.lifetime_years, s.costs.bess_degradation);
    return out;
}

}  // namespace ohres::model
