#pragma once

// Lifetime cost model of the hybrid microgrid and the sizing MILP: unit
// counts for four generator types, battery energy capacity and a cyclic
// hourly dispatch that balances the platform load.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ohres/milp.hpp"

namespace ohres::model {

enum class Resource { Wec, Tec, Owt, Fpv };

inline constexpr std::array<Resource, 4> kResources = {Resource::Wec, Resource::Tec, Resource::Owt, Resource::Fpv};

std::string_view resource_key(Resource r);    // "wec", "tec", ...
std::string_view resource_label(Resource r);  // "WEC", "TEC", ...
inline std::size_t index_of(Resource r) { return static_cast<std::size_t>(r); }

struct SubsystemCost {
    double precommissioning = 0.0;  // $ per unit (per kWh for the battery)
    double capital = 0.0;
    double om_per_year = 0.0;
    double decommissioning = 0.0;

    void validate(std::string_view what) const;
};

struct CostBook {
    SubsystemCost wec;
    SubsystemCost tec;
    SubsystemCost owt;
    SubsystemCost fpv;
    SubsystemCost bess;
    double bess_degradation = 0.0485;  // per year, uplift on battery capital
    double lifetime_years = 20.0;

    /// Default unit costs for 750 kW WEC, 500 kW TEC, 8 MW OWT, 0.4 kW
    /// FPV panels and per-kWh battery storage.
    static CostBook defaults();

    const SubsystemCost& unit(Resource r) const;
    SubsystemCost& unit(Resource r);
    CostBook scaled(double factor) const;
    void validate() const;
};

/// Breakdown of one subsystem's lifetime cost.
struct CostTerms {
    double precommissioning = 0.0;
    double capital = 0.0;
    double om = 0.0;
    double decommissioning = 0.0;

    double total() const { return precommissioning + capital + om + decommissioning; }
};

/// quantity * (precom + capital * uplift + O&M * years + decom), where the
/// uplift is 1 + degradation * years when a degradation rate is given
/// (battery) and 1 otherwise.
CostTerms subsystem_cost_terms(double quantity, const SubsystemCost& cost, double lifetime_years,
                               std::optional<double> degradation = std::nullopt);

double subsystem_lifetime_cost(double quantity, const SubsystemCost& cost, double lifetime_years,
                               std::optional<double> degradation = std::nullopt);

/// Lifetime cost of one generator unit or of one kWh of storage.
double unit_lifetime_cost(const CostBook& book, Resource r);
double bess_kwh_lifetime_cost(const CostBook& book);

struct BessParams {
    double charge_efficiency = 0.80;
    double discharge_efficiency = 0.95;
    double soc_min = 0.1;
    double soc_max = 0.9;
    // kW; std::nullopt resolves to a quarter of the peak load.
    std::optional<double> p_max_charge;
    std::optional<double> p_max_discharge;
    bool enabled = true;
    std::optional<double> e_max;  // kWh cap on E_BESS

    void validate() const;
};

inline constexpr double kDefaultPowerLimitFraction = 0.25;

struct CountBounds {
    std::array<double, 4> upper = {200.0, 200.0, 200.0, 1'000'000.0};

    double operator[](Resource r) const { return upper[index_of(r)]; }
    double& operator[](Resource r) { return upper[index_of(r)]; }
};

struct SizingScenario {
    std::string region = "unnamed";
    std::vector<double> load;                          // kW per hour
    std::array<std::vector<double>, 4> generation;     // kW per unit per hour, by Resource
    CostBook costs = CostBook::defaults();
    BessParams bess;
    CountBounds bounds;
    bool allow_curtailment = true;

    std::size_t horizon() const noexcept { return load.size(); }
    const std::vector<double>& profile(Resource r) const { return generation[index_of(r)]; }
    double charge_power_limit() const;
    double discharge_power_limit() const;
    double load_peak() const;

    /// Throws AssemblyError on incomplete or inconsistent profiles and
    /// ParameterError on bad cost/battery parameters.
    void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NodeLimit, TimeLimit };

std::string_view to_string(SolveStatus s);
SolveStatus parse_solve_status(std::string_view s);

struct SolverDiagnostics {
    SolveStatus status = SolveStatus::Optimal;
    std::int64_t nodes = 0;
    std::int64_t lp_iterations = 0;
    double gap = 0.0;
    double best_bound = 0.0;
    double root_bound = 0.0;
};

struct SizingSolution {
    std::array<std::int64_t, 4> counts{};  // by Resource
    double e_bess = 0.0;                   // kWh
    double e_initial = 0.0;                // kWh
    std::vector<double> energy;            // E_t, t = 1..T
    std::vector<double> p_charge;
    std::vector<double> p_discharge;
    std::vector<double> p_curtail;
    std::vector<int> u_charge;
    std::vector<int> u_discharge;
    double objective = 0.0;
    SolverDiagnostics diagnostics;

    std::int64_t count(Resource r) const { return counts[index_of(r)]; }
    std::size_t horizon() const noexcept { return energy.size(); }
};

// Column names used by assemble_milp.
std::string count_column(Resource r);  // "N_WEC" ...
std::string hourly_column(std::string_view stem, std::size_t t);  // "E[3]", t is 1-based

/// Builds the sizing MILP. Columns: 4 integer counts, E_BESS, E_initial,
/// then per hour E, P_char, P_disc, P_curt, then per hour U_char, U_disc.
MilpProblem assemble_milp(const SizingScenario& scenario);

/// Maps a primal vector of assemble_milp's problem onto a SizingSolution.
/// Integer and binary columns are rounded to the nearest integer.
SizingSolution extract_solution(const SizingScenario& scenario, const MilpProblem& problem,
                                std::span<const double> values);

struct FamilyCheck {
    std::string family;
    double max_violation = 0.0;      // relative
    std::vector<std::size_t> flagged;  // 1-based hours (0 for scenario-level rows) above tolerance
};

struct ValidationReport {
    std::vector<FamilyCheck> families;
    double objective_reported = 0.0;
    double objective_recomputed = 0.0;
    double objective_discrepancy = 0.0;           // absolute, $
    double objective_relative_discrepancy = 0.0;
    double tolerance = 1e-6;
    double objective_tolerance = 1e-9;

    const FamilyCheck* family(std::string_view name) const;
    double max_violation() const;
    bool constraints_ok() const;
    bool objective_ok() const;
    bool passed() const { return constraints_ok() && objective_ok(); }
};

inline constexpr double kDefaultValidationTolerance = 1e-6;
inline constexpr double kDefaultObjectiveTolerance = 1e-9;

/// Re-checks bounds, integrality, power balance, the energy recursion, the
/// cyclic end condition, SOC window, charge/discharge exclusion and power
/// limits directly from the scenario, and recomputes the lifetime cost.
ValidationReport validate_solution(const SizingScenario& scenario, const SizingSolution& solution,
                                   double tolerance = kDefaultValidationTolerance,
                                   double objective_tolerance = kDefaultObjectiveTolerance);

/// Lifetime cost of a solution per subsystem (in Resource order, then BESS).
struct CostBreakdown {
    std::array<CostTerms, 4> generators;
    CostTerms bess;
    double total() const;
};

CostBreakdown cost_breakdown(const SizingScenario& scenario, const SizingSolution& solution);

}  // namespace ohres::model
