#pragma once

// Exact MILP solution without external solvers: a dense-tableau two-phase
// simplex for relaxations, best-bound branch-and-bound for integrality, and
// an exhaustive enumerator used as an independent check on small instances.

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "ohres/milp.hpp"

namespace ohres::solver {

struct SolverOptions {
    double feasibility_tolerance = 1e-7;
    double optimality_tolerance = 1e-9;
    double integrality_tolerance = 1e-6;
    double pivot_tolerance = 1e-11;
    double relative_gap = 1e-6;
    std::int64_t node_limit = 200'000;
    double time_limit_seconds = 600.0;
    // Dantzig pricing until this many consecutive non-improving pivots, then Bland.
    int bland_threshold = 500;
    // Round the root relaxation's counts up, fix them and re-solve.
    bool seed_incumbent = true;
    // At every fractional node, fix all integer columns at their rounded-up
    // values and re-solve the continuous part for a candidate incumbent.
    bool node_rounding = true;
    // Called with (parent bound, child LP objective) for every child LP that
    // solves to optimality.
    std::function<void(double, double)> node_observer;

    /// Throws ConfigError when a tolerance or limit is not positive.
    void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view to_string(LpStatus s);

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> values;  // one per problem column, empty unless optimal
    double objective = 0.0;
    std::int64_t iterations = 0;
    // Size of the final basis and how many standard-form columns are nonzero
    // in the returned vertex; a basic solution never has more of the latter.
    std::size_t basis_size = 0;
    std::size_t nonzero_count = 0;
};

/// Solves the continuous relaxation (integrality marks ignored).
LpSolution solve_lp(const model::MilpProblem& problem, const SolverOptions& options = {});

/// Same, with the column bounds replaced by `lower`/`upper`.
LpSolution solve_lp(const model::MilpProblem& problem, std::span<const double> lower,
                    std::span<const double> upper, const SolverOptions& options = {});

enum class MilpStatus { Optimal, Infeasible, Unbounded, NodeLimit, TimeLimit };

std::string_view to_string(MilpStatus s);

struct BoundChange {
    std::size_t column;
    double lower;
    double upper;
};

/// Open subproblem in the branch-and-bound tree.
struct BranchNode {
    std::vector<BoundChange> changes;  // applied in order on top of the root bounds
    double bound = 0.0;                // LP objective, never below the parent's
    double parent_bound = 0.0;
    int depth = 0;
    std::int64_t sequence = 0;
    std::vector<double> values;
};

struct MilpResult {
    MilpStatus status = MilpStatus::Infeasible;
    bool has_solution = false;
    std::vector<double> values;
    double objective = 0.0;
    double best_bound = 0.0;
    double root_bound = 0.0;
    double gap = 0.0;  // relative
    std::int64_t nodes = 0;
    std::int64_t lp_iterations = 0;
};

MilpResult solve_milp(const model::MilpProblem& problem, const SolverOptions& options = {});

inline constexpr double kDefaultEnumerationBudget = 1e7;

/// Number of integer assignments the oracle would enumerate (product of
/// every integer column's range). Infinite when a range is unbounded.
double enumeration_size(const model::MilpProblem& problem);

struct OracleResult {
    bool feasible = false;
    std::vector<double> values;
    double objective = 0.0;
    std::int64_t assignments = 0;
    std::int64_t lp_solves = 0;
};

/// Enumerates every integer/binary assignment, solves the remaining LP for
/// each and keeps the cheapest. Throws BudgetError when the enumeration size
/// exceeds `budget`.
OracleResult brute_force_oracle(const model::MilpProblem& problem, double budget = kDefaultEnumerationBudget,
                                const SolverOptions& options = {});

}  // namespace ohres::solver
