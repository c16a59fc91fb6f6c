#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "lp_internal.hpp"
#include "ohres/error.hpp"
#include "ohres/solver.hpp"

namespace ohres::solver {

using model::MilpProblem;
using model::VarKind;

std::string_view to_string(MilpStatus s)
{
    switch (s) {
        case MilpStatus::Optimal: return "optimal";
        case MilpStatus::Infeasible: return "infeasible";
        case MilpStatus::Unbounded: return "unbounded";
        case MilpStatus::NodeLimit: return "node_limit";
        case MilpStatus::TimeLimit: return "time_limit";
    }
    return "?";
}

namespace {

std::vector<std::size_t> integer_columns(const MilpProblem& p)
{
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < p.num_columns(); ++j) {
        if (p.is_integral(j)) cols.push_back(j);
    }
    return cols;
}

// Root bounds with integer ranges rounded inward; binaries clipped to [0, 1].
void integral_root_bounds(const MilpProblem& p, const std::vector<std::size_t>& cols, double tol,
                          std::vector<double>& lo, std::vector<double>& up)
{
    lo = p.lower();
    up = p.upper();
    for (std::size_t j : cols) {
        if (p.kinds()[j] == VarKind::Binary) {
            lo[j] = std::max(lo[j], 0.0);
            up[j] = std::min(up[j], 1.0);
        }
        if (!std::isfinite(lo[j]) || !std::isfinite(up[j])) {
            throw ConfigError("integer column '" + p.names()[j] + "' needs finite bounds");
        }
        lo[j] = std::ceil(lo[j] - tol);
        up[j] = std::floor(up[j] + tol);
    }
}

bool integral(const std::vector<double>& x, const std::vector<std::size_t>& cols, double tol)
{
    return std::all_of(cols.begin(), cols.end(),
                       [&](std::size_t j) { return std::fabs(x[j] - std::round(x[j])) <= tol; });
}

// Most fractional general-integer column, ties to the lowest index; binaries
// are considered only once every general-integer column is integral.
std::size_t branching_column(const MilpProblem& p, const std::vector<double>& x, const std::vector<std::size_t>& cols,
                             double tol)
{
    for (const bool binaries : {false, true}) {
        std::size_t best = cols.size();
        double best_score = tol;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if ((p.kinds()[cols[k]] == VarKind::Binary) != binaries) continue;
            const double v = x[cols[k]];
            const double f = v - std::floor(v);
            const double score = std::min(f, 1.0 - f);
            if (score > best_score) {
                best_score = score;
                best = k;
            }
        }
        if (best != cols.size()) return cols[best];
    }
    return x.size();
}

struct NodeOrder {
    double quantum;
    bool operator()(const BranchNode& a, const BranchNode& b) const
    {
        const double ka = std::floor(a.bound / quantum);
        const double kb = std::floor(b.bound / quantum);
        if (ka != kb) return ka < kb;
        if (a.depth != b.depth) return a.depth > b.depth;
        return a.sequence < b.sequence;
    }
};

// Fixes every integer column of `x` (fractional ones rounded up, within
// bounds) and solves for the continuous columns.
LpSolution rounded_completion(const MilpProblem& p, const std::vector<std::size_t>& cols, const std::vector<double>& x,
                              std::vector<double> lo, std::vector<double> up, const SolverOptions& opt)
{
    const double tol = opt.integrality_tolerance;
    for (std::size_t j : cols) {
        const double near = std::round(x[j]);
        const double v = std::fabs(x[j] - near) <= tol ? near : std::ceil(x[j]);
        lo[j] = up[j] = std::clamp(v, lo[j], up[j]);
    }
    return solve_lp_bounded(p, lo, up, opt, false);
}

double absolute_gap(double incumbent, double rel)
{
    return rel * std::max(1.0, std::fabs(incumbent));
}

}  // namespace

MilpResult solve_milp(const MilpProblem& problem, const SolverOptions& opt)
{
    opt.validate();
    const auto start = std::chrono::steady_clock::now();
    const auto cols = integer_columns(problem);
    const double itol = opt.integrality_tolerance;

    std::vector<double> root_lo, root_up;
    integral_root_bounds(problem, cols, itol, root_lo, root_up);

    MilpResult res;
    const LpSolution root = solve_lp_bounded(problem, root_lo, root_up, opt, true);
    res.nodes = 1;
    res.lp_iterations = root.iterations;
    if (root.status == LpStatus::Infeasible) {
        res.status = MilpStatus::Infeasible;
        return res;
    }
    if (root.status == LpStatus::Unbounded) {
        res.status = MilpStatus::Unbounded;
        return res;
    }
    res.root_bound = root.objective;

    bool have_incumbent = false;
    double incumbent = 0.0;
    std::vector<double> best;
    auto offer = [&](const LpSolution& s) {
        if (!have_incumbent || s.objective < incumbent) {
            have_incumbent = true;
            incumbent = s.objective;
            best = s.values;
        }
    };

    if (integral(root.values, cols, itol)) {
        offer(root);
    } else if (opt.seed_incumbent) {
        // Round counts up and let the LP fill in the rest; binaries left
        // fractional are rounded up the same way.
        auto lo = root_lo;
        auto up = root_up;
        for (std::size_t j : cols) {
            if (problem.kinds()[j] != VarKind::Integer) continue;
            const double v = std::min(std::ceil(root.values[j] - itol), up[j]);
            lo[j] = up[j] = v;
        }
        const LpSolution seed = solve_lp_bounded(problem, lo, up, opt, false);
        res.lp_iterations += seed.iterations;
        if (seed.status == LpStatus::Optimal) {
            if (integral(seed.values, cols, itol)) {
                offer(seed);
            } else {
                const LpSolution done = rounded_completion(problem, cols, seed.values, lo, up, opt);
                res.lp_iterations += done.iterations;
                if (done.status == LpStatus::Optimal) offer(done);
            }
        }
    }

    auto apply = [&](const std::vector<BoundChange>& changes, std::vector<double>& lo, std::vector<double>& up) {
        lo = root_lo;
        up = root_up;
        for (const auto& c : changes) {
            lo[c.column] = c.lower;
            up[c.column] = c.upper;
        }
    };

    const double quantum = 1e-9 * std::max(1.0, std::fabs(root.objective));
    std::set<BranchNode, NodeOrder> open(NodeOrder{quantum});
    std::int64_t sequence = 0;
    bool limit_hit = false;
    MilpStatus limit_status = MilpStatus::NodeLimit;

    if (!have_incumbent || !integral(root.values, cols, itol)) {
        open.insert(BranchNode{{}, root.objective, root.objective, 0, sequence++, root.values});
    }

    std::vector<double> lo, up;
    while (!open.empty()) {
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > opt.time_limit_seconds) {
            limit_hit = true;
            limit_status = MilpStatus::TimeLimit;
            break;
        }
        if (res.nodes >= opt.node_limit) {
            limit_hit = true;
            limit_status = MilpStatus::NodeLimit;
            break;
        }

        BranchNode node = std::move(open.extract(open.begin()).value());
        if (have_incumbent && node.bound >= incumbent - absolute_gap(incumbent, opt.relative_gap)) {
            open.insert(std::move(node));
            break;  // best-bound order: everything left is pruned too
        }

        const std::size_t j = branching_column(problem, node.values, cols, itol);
        if (j == node.values.size()) continue;  // integral nodes never enter the queue
        const double v = node.values[j];
        apply(node.changes, lo, up);

        const BoundChange children[2] = {{j, lo[j], std::floor(v)}, {j, std::ceil(v), up[j]}};
        for (const auto& change : children) {
            if (change.lower > change.upper) continue;
            auto changes = node.changes;
            changes.push_back(change);
            std::vector<double> clo, cup;
            apply(changes, clo, cup);
            const LpSolution child = solve_lp_bounded(problem, clo, cup, opt, false);
            ++res.nodes;
            res.lp_iterations += child.iterations;
            if (child.status != LpStatus::Optimal) continue;
            if (opt.node_observer) opt.node_observer(node.bound, child.objective);
            const double bound = std::max(child.objective, node.bound);
            if (have_incumbent && bound >= incumbent - absolute_gap(incumbent, opt.relative_gap)) continue;
            if (integral(child.values, cols, itol)) {
                offer(child);
                continue;
            }
            if (opt.node_rounding) {
                const LpSolution done = rounded_completion(problem, cols, child.values, clo, cup, opt);
                res.lp_iterations += done.iterations;
                if (done.status == LpStatus::Optimal) {
                    offer(done);
                    if (bound >= incumbent - absolute_gap(incumbent, opt.relative_gap)) continue;
                }
            }
            open.insert(BranchNode{std::move(changes), bound, node.bound, node.depth + 1, sequence++, child.values});
        }
    }

    double best_bound = have_incumbent ? incumbent : res.root_bound;
    if (!open.empty()) best_bound = std::min(best_bound, open.begin()->bound);
    res.best_bound = best_bound;

    if (!have_incumbent) {
        res.status = limit_hit ? limit_status : MilpStatus::Infeasible;
        res.gap = limit_hit ? std::numeric_limits<double>::infinity() : 0.0;
        return res;
    }

    // Snap integer columns exactly and re-solve the continuous part.
    bool exact = true;
    for (std::size_t c : cols) exact = exact && best[c] == std::round(best[c]);
    if (!exact) {
        auto plo = root_lo;
        auto pup = root_up;
        for (std::size_t c : cols) plo[c] = pup[c] = std::round(best[c]);
        const LpSolution polished = solve_lp_bounded(problem, plo, pup, opt, true);
        res.lp_iterations += polished.iterations;
        if (polished.status == LpStatus::Optimal) {
            best = polished.values;
        } else {
            for (std::size_t c : cols) best[c] = std::round(best[c]);
        }
    }

    res.has_solution = true;
    res.values = std::move(best);
    res.objective = problem.evaluate(res.values);
    res.gap = std::max(0.0, res.objective - res.best_bound) / std::max(1.0, std::fabs(res.objective));
    res.status = limit_hit && res.gap > opt.relative_gap ? limit_status : MilpStatus::Optimal;
    return res;
}

double enumeration_size(const MilpProblem& p)
{
    double total = 1.0;
    for (std::size_t j = 0; j < p.num_columns(); ++j) {
        if (!p.is_integral(j)) continue;
        double lo = p.lower()[j];
        double up = p.upper()[j];
        if (p.kinds()[j] == VarKind::Binary) {
            lo = std::max(lo, 0.0);
            up = std::min(up, 1.0);
        }
        if (!std::isfinite(lo) || !std::isfinite(up)) return std::numeric_limits<double>::infinity();
        total *= std::max(0.0, std::floor(up) - std::ceil(lo) + 1.0);
    }
    return total;
}

OracleResult brute_force_oracle(const MilpProblem& problem, double budget, const SolverOptions& opt)
{
    opt.validate();
    const double size = enumeration_size(problem);
    if (!(size <= budget)) {
        throw BudgetError("enumeration needs " + std::to_string(size) + " assignments, budget is " +
                              std::to_string(budget),
                          size);
    }
    const auto cols = integer_columns(problem);
    std::vector<double> root_lo, root_up;
    integral_root_bounds(problem, cols, opt.integrality_tolerance, root_lo, root_up);

    // Rows over integer columns only can be screened before any LP.
    std::vector<bool> is_int(problem.num_columns(), false);
    for (std::size_t j : cols) is_int[j] = true;
    std::vector<const model::Constraint*> pure;
    for (const auto& row : problem.rows()) {
        if (std::all_of(row.terms.begin(), row.terms.end(), [&](const model::Term& t) { return is_int[t.column]; })) {
            pure.push_back(&row);
        }
    }

    OracleResult out;
    if (size == 0.0) return out;

    std::vector<double> assign(cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) assign[k] = root_lo[cols[k]];
    auto lo = root_lo;
    auto up = root_up;

    for (;;) {
        ++out.assignments;
        for (std::size_t k = 0; k < cols.size(); ++k) lo[cols[k]] = up[cols[k]] = assign[k];

        bool admissible = true;
        for (const auto* row : pure) {
            double lhs = 0.0;
            for (const auto& t : row->terms) lhs += t.coefficient * lo[t.column];
            const double tol = opt.feasibility_tolerance * std::max(1.0, std::fabs(row->rhs));
            switch (row->relation) {
                case model::Relation::Equal: admissible = std::fabs(lhs - row->rhs) <= tol; break;
                case model::Relation::LessEqual: admissible = lhs <= row->rhs + tol; break;
                case model::Relation::GreaterEqual: admissible = lhs >= row->rhs - tol; break;
            }
            if (!admissible) break;
        }

        if (admissible) {
            const LpSolution lp = solve_lp_bounded(problem, lo, up, opt, true);
            ++out.lp_solves;
            if (lp.status == LpStatus::Optimal &&
                (!out.feasible || lp.objective < out.objective - 1e-12 * std::max(1.0, std::fabs(out.objective)))) {
                out.feasible = true;
                out.objective = lp.objective;
                out.values = lp.values;
            }
        }

        std::size_t k = cols.size();
        while (k > 0) {
            --k;
            if (assign[k] < root_up[cols[k]]) {
                assign[k] += 1.0;
                break;
            }
            assign[k] = root_lo[cols[k]];
            if (k == 0) return out;
        }
        if (cols.empty()) return out;
    }
}

}  // namespace ohres::solver
