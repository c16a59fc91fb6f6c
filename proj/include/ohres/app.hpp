#pragma once

// Scenario-driven pipeline behind the command-line tool: scenario files,
// profile building from raw datasets, solve/validate, solution documents and
// reports.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ohres/ingest.hpp"
#include "ohres/model.hpp"
#include "ohres/projection.hpp"
#include "ohres/solver.hpp"

namespace ohres::app {

struct DatasetConfig {
    std::optional<std::filesystem::path> ndbc;
    std::optional<std::filesystem::path> currents;
    std::optional<std::filesystem::path> pvwatts;
    std::optional<std::filesystem::path> wec_matrix;
    ingest::SpeedUnit currents_unit = ingest::SpeedUnit::Knots;
    projection::WavePeriodChannel wave_period = projection::WavePeriodChannel::Dominant;
    std::optional<double> pv_system_rating;  // kW, when the PVWatts file lacks it
    double wec_rated_power = 750.0;          // kW
};

struct ScenarioFile {
    std::filesystem::path base_dir;
    std::string region = "unnamed";
    std::optional<std::filesystem::path> profiles_file;
    std::optional<DatasetConfig> datasets;
    // Inline hourly profiles by name ("load", "wec", "tec", "owt", "fpv").
    std::map<std::string, std::vector<double>> inline_profiles;
    projection::ProjectionSpecs projection;
    // Scale FPV output against the PVWatts file's own rating unless the
    // scenario pins the reference rating.
    bool fpv_reference_from_file = true;
    model::CostBook costs = model::CostBook::defaults();
    model::BessParams bess;
    model::CountBounds bounds;
    bool allow_curtailment = true;
    solver::SolverOptions solver;
    double validation_tolerance = model::kDefaultValidationTolerance;
    double enumeration_budget = solver::kDefaultEnumerationBudget;
};

/// Parses a scenario document. Relative paths resolve against `base_dir`.
/// Unknown keys and ill-typed values are ConfigErrors.
ScenarioFile parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir);
ScenarioFile load_scenario(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

/// Runs ingest and projection over the scenario's raw datasets and returns
/// per-unit generation profiles plus the load when the scenario has one.
ingest::ProfileSet build_profiles(const ScenarioFile& scenario);

/// Human-readable 24-hour summary of a profile set.
std::string summarize_profiles(const ingest::ProfileSet& profiles);

/// Resolves profiles (inline first, then the profiles document, then raw
/// datasets; resources without a profile produce nothing) into a problem.
model::SizingScenario sizing_scenario(const ScenarioFile& scenario);

/// Thrown when the sizing problem has no feasible solution.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Thrown when a solved or supplied solution fails independent validation.
class ValidationError : public Error {
public:
    ValidationError(const std::string& message, model::ValidationReport report);
    const model::ValidationReport& report() const noexcept { return report_; }

private:
    model::ValidationReport report_;
};

/// Thrown when the node or time limit ran out before any feasible
/// assignment was found.
class LimitError : public Error {
public:
    using Error::Error;
};

/// Explains an infeasible scenario, e.g. hours whose load exceeds the
/// supply available at the count bounds.
std::string diagnose_infeasibility(const model::SizingScenario& scenario);

struct SolveOutcome {
    model::SizingSolution solution;
    model::ValidationReport validation;
    double seconds = 0.0;
};

/// Assemble, solve and validate. Throws InfeasibleError, ValidationError,
/// LimitError or (for unbounded problems) Error. A node/time limit yields a solution whose
/// diagnostics carry the limit status.
SolveOutcome solve_scenario(const model::SizingScenario& scenario, const solver::SolverOptions& options,
                            double validation_tolerance = model::kDefaultValidationTolerance);

std::string solution_to_json(const std::string& region, const model::SizingSolution& solution, int indent = 2);
model::SizingSolution solution_from_json(const std::string& text, std::string* region = nullptr);

enum class ReportFormat { Text, Json, Csv };

ReportFormat parse_report_format(const std::string& flag);

std::string render_report(const model::SizingScenario& scenario, const model::SizingSolution& solution,
                          ReportFormat format);
std::string render_validation(const model::ValidationReport& report);

struct OracleComparison {
    solver::MilpResult milp;
    solver::OracleResult oracle;
    double relative_difference = 0.0;
    bool verdicts_agree = false;
    bool agree = false;
    std::string text;
};

/// Runs branch-and-bound and exhaustive enumeration on the same problem.
OracleComparison compare_with_oracle(const model::SizingScenario& scenario, const solver::SolverOptions& options,
                                     double budget = solver::kDefaultEnumerationBudget);

inline constexpr double kOracleAgreementTolerance = 1e-6;

}  // namespace ohres::app
