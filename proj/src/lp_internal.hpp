#pragma once

#include <span>

#include "ohres/solver.hpp"

namespace ohres::solver {

// solve_lp without option validation; `refine` re-solves the final basis
// against the original rows for accurate primal values.
LpSolution solve_lp_bounded(const model::MilpProblem& problem, std::span<const double> lower,
                            std::span<const double> upper, const SolverOptions& options, bool refine);

}  // namespace ohres::solver
