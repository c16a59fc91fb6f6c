#include <algorithm>
#include <cmath>

#include "lp_internal.hpp"
#include "ohres/error.hpp"
#include "ohres/solver.hpp"

namespace ohres::solver {

using model::Relation;

void SolverOptions::validate() const
{
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
    };
    positive(feasibility_tolerance, "feasibility tolerance");
    positive(optimality_tolerance, "optimality tolerance");
    positive(integrality_tolerance, "integrality tolerance");
    positive(pivot_tolerance, "pivot tolerance");
    positive(relative_gap, "relative gap");
    positive(time_limit_seconds, "time limit");
    if (node_limit <= 0) throw ConfigError("node limit must be positive");
    if (bland_threshold <= 0) throw ConfigError("Bland threshold must be positive");
}

std::string_view to_string(LpStatus s)
{
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

namespace {

constexpr double kRatioTolerance = 1e-9;
constexpr double kDropTolerance = 1e-12;

enum class MapKind { Fixed, Shift, Mirror, Free };

// How an original column is expressed in standard-form columns y >= 0.
struct ColumnMap {
    MapKind kind = MapKind::Fixed;
    double offset = 0.0;    // fixed value, lower bound or upper bound
    std::size_t first = 0;  // first standard-form column
};

// min c'y s.t. rows, y >= 0, with rows scaled and right-hand sides >= 0.
struct StandardForm {
    std::size_t n = 0;
    std::vector<ColumnMap> map;
    std::vector<std::vector<double>> a;
    std::vector<Relation> rel;
    std::vector<double> b;
    std::vector<double> c;
    bool infeasible = false;
};

StandardForm standardize(const model::MilpProblem& p, std::span<const double> lo, std::span<const double> up,
                         const SolverOptions& opt)
{
    StandardForm sf;
    const std::size_t cols = p.num_columns();
    sf.map.resize(cols);
    std::vector<std::vector<double>> ub_rows_coef;

    struct PendingUpper {
        std::size_t column;
        double rhs;
    };
    std::vector<PendingUpper> pending;

    for (std::size_t j = 0; j < cols; ++j) {
        const double l = lo[j];
        const double u = up[j];
        auto& m = sf.map[j];
        if (l > u) {
            if (l - u > opt.feasibility_tolerance * std::max(1.0, std::fabs(l))) {
                sf.infeasible = true;
                return sf;
            }
            m = {MapKind::Fixed, l, 0};
        } else if (l == u) {
            m = {MapKind::Fixed, l, 0};
        } else if (std::isfinite(l)) {
            m = {MapKind::Shift, l, sf.n++};
            if (std::isfinite(u)) pending.push_back({m.first, u - l});
        } else if (std::isfinite(u)) {
            m = {MapKind::Mirror, u, sf.n++};
        } else {
            m = {MapKind::Free, 0.0, sf.n};
            sf.n += 2;
        }
    }

    sf.c.assign(sf.n, 0.0);
    const auto& cost = p.objective();
    for (std::size_t j = 0; j < cols; ++j) {
        const auto& m = sf.map[j];
        switch (m.kind) {
            case MapKind::Fixed: break;
            case MapKind::Shift: sf.c[m.first] += cost[j]; break;
            case MapKind::Mirror: sf.c[m.first] -= cost[j]; break;
            case MapKind::Free:
                sf.c[m.first] += cost[j];
                sf.c[m.first + 1] -= cost[j];
                break;
        }
    }

    auto add_row = [&](std::vector<double> row, Relation rel, double rhs, double rhs_scale) {
        double scale = 0.0;
        for (double v : row) scale = std::max(scale, std::fabs(v));
        if (scale == 0.0) {
            const double tol = opt.feasibility_tolerance * std::max(1.0, rhs_scale);
            const bool ok = rel == Relation::Equal ? std::fabs(rhs) <= tol
                            : rel == Relation::LessEqual ? rhs >= -tol
                                                          : rhs <= tol;
            if (!ok) sf.infeasible = true;
            return;
        }
        for (double& v : row) v /= scale;
        rhs /= scale;
        if (rhs < 0.0) {
            for (double& v : row) v = -v;
            rhs = -rhs;
            if (rel == Relation::LessEqual) rel = Relation::GreaterEqual;
            else if (rel == Relation::GreaterEqual) rel = Relation::LessEqual;
        }
        sf.a.push_back(std::move(row));
        sf.rel.push_back(rel);
        sf.b.push_back(rhs);
    };

    for (const auto& con : p.rows()) {
        std::vector<double> row(sf.n, 0.0);
        double rhs = con.rhs;
        double magnitude = std::fabs(con.rhs);
        for (const auto& t : con.terms) {
            const auto& m = sf.map[t.column];
            switch (m.kind) {
                case MapKind::Fixed:
                    rhs -= t.coefficient * m.offset;
                    magnitude = std::max(magnitude, std::fabs(t.coefficient * m.offset));
                    break;
                case MapKind::Shift:
                    row[m.first] += t.coefficient;
                    rhs -= t.coefficient * m.offset;
                    break;
                case MapKind::Mirror:
                    row[m.first] -= t.coefficient;
                    rhs -= t.coefficient * m.offset;
                    break;
                case MapKind::Free:
                    row[m.first] += t.coefficient;
                    row[m.first + 1] -= t.coefficient;
                    break;
            }
        }
        add_row(std::move(row), con.relation, rhs, magnitude);
        if (sf.infeasible) return sf;
    }
    for (const auto& pu : pending) {
        std::vector<double> row(sf.n, 0.0);
        row[pu.column] = 1.0;
        add_row(std::move(row), Relation::LessEqual, pu.rhs, pu.rhs);
    }
    return sf;
}

class Tableau {
public:
    Tableau(const StandardForm& sf, const SolverOptions& opt) : opt_(opt), m_(sf.a.size()), n_(sf.n)
    {
        for (auto r : sf.rel) {
            if (r != Relation::Equal) ++slacks_;
            if (r != Relation::LessEqual) ++arts_;
        }
        art_start_ = n_ + slacks_;
        width_ = n_ + slacks_ + arts_ + 1;
        rhs_ = width_ - 1;
        data_.assign((m_ + 2) * width_, 0.0);
        basis_.assign(m_, 0);

        std::size_t slack = n_;
        std::size_t art = art_start_;
        for (std::size_t i = 0; i < m_; ++i) {
            double* r = row(i);
            std::copy(sf.a[i].begin(), sf.a[i].end(), r);
            r[rhs_] = sf.b[i];
            switch (sf.rel[i]) {
                case Relation::LessEqual:
                    r[slack] = 1.0;
                    basis_[i] = slack++;
                    break;
                case Relation::GreaterEqual:
                    r[slack++] = -1.0;
                    r[art] = 1.0;
                    basis_[i] = art++;
                    break;
                case Relation::Equal:
                    r[art] = 1.0;
                    basis_[i] = art++;
                    break;
            }
        }
        initial_.assign(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(m_ * width_));

        double cscale = 0.0;
        for (double v : sf.c) cscale = std::max(cscale, std::fabs(v));
        if (cscale == 0.0) cscale = 1.0;
        double* z2 = row(m_);
        for (std::size_t j = 0; j < n_; ++j) z2[j] = sf.c[j] / cscale;

        double* z1 = row(m_ + 1);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < art_start_) continue;
            const double* r = row(i);
            for (std::size_t j = 0; j < art_start_; ++j) z1[j] -= r[j];
            z1[rhs_] -= r[rhs_];
        }
    }

    std::size_t rows() const { return m_; }
    std::int64_t iterations() const { return iterations_; }

    // Phase 1 objective (sum of artificials) after optimisation.
    double infeasibility() const { return -row(m_ + 1)[rhs_]; }

    double max_rhs() const
    {
        double m = 0.0;
        for (std::size_t i = 0; i < m_; ++i) m = std::max(m, std::fabs(row(i)[rhs_]));
        return m;
    }

    enum class Outcome { Optimal, Unbounded };

    Outcome optimize(bool phase_one)
    {
        const std::size_t obj = phase_one ? m_ + 1 : m_;
        const std::int64_t max_iterations = 50'000 + 50 * static_cast<std::int64_t>(m_ + width_);
        bool bland = false;
        int stall = 0;
        double last = -row(obj)[rhs_];
        for (;;) {
            if (iterations_ > max_iterations) throw Error("simplex iteration limit exceeded");
            const double* z = row(obj);

            std::size_t q = width_;
            double best = -opt_.optimality_tolerance;
            for (std::size_t j = 0; j < art_start_; ++j) {
                if (bland) {
                    if (z[j] < -opt_.optimality_tolerance) {
                        q = j;
                        break;
                    }
                } else if (z[j] < best) {
                    best = z[j];
                    q = j;
                }
            }
            if (q == width_) return Outcome::Optimal;

            std::size_t r = m_;
            double best_ratio = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = row(i)[q];
                if (a <= kRatioTolerance) continue;
                const double ratio = std::max(row(i)[rhs_], 0.0) / a;
                if (r == m_) {
                    r = i;
                    best_ratio = ratio;
                    continue;
                }
                const double eps = 1e-11 * (1.0 + best_ratio);
                if (ratio < best_ratio - eps) {
                    r = i;
                    best_ratio = ratio;
                } else if (ratio <= best_ratio + eps) {
                    const bool better = bland ? basis_[i] < basis_[r] : a > row(r)[q];
                    if (better) {
                        r = i;
                        best_ratio = std::min(best_ratio, ratio);
                    }
                }
            }
            if (r == m_) return Outcome::Unbounded;

            pivot(r, q);
            const double now = -row(obj)[rhs_];
            if (now < last - 1e-12 * (1.0 + std::fabs(last))) {
                stall = 0;
            } else if (++stall >= opt_.bland_threshold) {
                bland = true;
            }
            last = now;
        }
    }

    // Pivots basic artificials out where possible; rows where that is
    // impossible are redundant and keep a zero-valued artificial.
    void expel_artificials()
    {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < art_start_) continue;
            const double* r = row(i);
            std::size_t best = width_;
            double mag = 1e-9;
            for (std::size_t j = 0; j < art_start_; ++j) {
                if (std::fabs(r[j]) > mag) {
                    mag = std::fabs(r[j]);
                    best = j;
                }
            }
            if (best != width_) pivot(i, best);
        }
    }

    // Standard-form values (structural and slack columns) at the current basis.
    std::vector<double> primal(bool refine) const
    {
        std::vector<double> x(art_start_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < art_start_) x[basis_[i]] = row(i)[rhs_];
        }
        if (refine) {
            std::vector<double> xb;
            if (solve_basis(xb)) {
                bool sane = true;
                for (double v : xb) sane = sane && std::isfinite(v) && v > -1e-6 * (1.0 + max_rhs());
                if (sane) {
                    for (std::size_t i = 0; i < m_; ++i) {
                        if (basis_[i] < art_start_) x[basis_[i]] = xb[i];
                    }
                }
            }
        }
        for (double& v : x) {
            if (v < 0.0) v = 0.0;
        }
        return x;
    }

private:
    double* row(std::size_t i) { return data_.data() + i * width_; }
    const double* row(std::size_t i) const { return data_.data() + i * width_; }

    void pivot(std::size_t r, std::size_t q)
    {
        double* pr = row(r);
        const double piv = pr[q];
        if (!(std::fabs(piv) >= opt_.pivot_tolerance)) {
            throw PivotError("pivot element below tolerance", r, q);
        }
        ++iterations_;
        const double inv = 1.0 / piv;
        nz_.clear();
        for (std::size_t j = 0; j < width_; ++j) {
            if (pr[j] == 0.0) continue;
            pr[j] *= inv;
            nz_.push_back(j);
        }
        pr[q] = 1.0;
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i == r) continue;
            double* pi = row(i);
            const double f = pi[q];
            if (f == 0.0) continue;
            for (std::size_t j : nz_) {
                double v = pi[j] - f * pr[j];
                if (std::fabs(v) < kDropTolerance) v = 0.0;
                pi[j] = v;
            }
            pi[q] = 0.0;
        }
        basis_[r] = q;
    }

    // Solves B x_B = b against the original rows with partial pivoting.
    bool solve_basis(std::vector<double>& xb) const
    {
        const std::size_t m = m_;
        std::vector<double> B(m * (m + 1));
        for (std::size_t i = 0; i < m; ++i) {
            const double* src = initial_.data() + i * width_;
            for (std::size_t k = 0; k < m; ++k) B[i * (m + 1) + k] = src[basis_[k]];
            B[i * (m + 1) + m] = src[rhs_];
        }
        const std::size_t w = m + 1;
        for (std::size_t col = 0; col < m; ++col) {
            std::size_t piv = col;
            double mag = std::fabs(B[col * w + col]);
            for (std::size_t i = col + 1; i < m; ++i) {
                if (std::fabs(B[i * w + col]) > mag) {
                    mag = std::fabs(B[i * w + col]);
                    piv = i;
                }
            }
            if (mag < 1e-13) return false;
            if (piv != col) {
                for (std::size_t k = 0; k < w; ++k) std::swap(B[piv * w + k], B[col * w + k]);
            }
            const double inv = 1.0 / B[col * w + col];
            for (std::size_t i = col + 1; i < m; ++i) {
                const double f = B[i * w + col] * inv;
                if (f == 0.0) continue;
                for (std::size_t k = col; k < w; ++k) B[i * w + k] -= f * B[col * w + k];
            }
        }
        xb.assign(m, 0.0);
        for (std::size_t ii = m; ii-- > 0;) {
            double s = B[ii * w + m];
            for (std::size_t k = ii + 1; k < m; ++k) s -= B[ii * w + k] * xb[k];
            xb[ii] = s / B[ii * w + ii];
        }
        return true;
    }

    const SolverOptions& opt_;
    std::size_t m_;
    std::size_t n_;
    std::size_t slacks_ = 0;
    std::size_t arts_ = 0;
    std::size_t art_start_ = 0;
    std::size_t width_ = 0;
    std::size_t rhs_ = 0;
    std::vector<double> data_;
    std::vector<double> initial_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> nz_;
    std::int64_t iterations_ = 0;
};

}  // namespace

LpSolution solve_lp_bounded(const model::MilpProblem& problem, std::span<const double> lower,
                            std::span<const double> upper, const SolverOptions& opt, bool refine)
{
    LpSolution out;
    if (lower.size() != problem.num_columns() || upper.size() != problem.num_columns()) {
        throw ConfigError("bound vectors do not match the problem's column count");
    }
    const StandardForm sf = standardize(problem, lower, upper, opt);
    if (sf.infeasible) {
        out.status = LpStatus::Infeasible;
        return out;
    }

    Tableau tab(sf, opt);
    tab.optimize(true);
    if (tab.infeasibility() > opt.feasibility_tolerance * std::max(1.0, tab.max_rhs())) {
        out.status = LpStatus::Infeasible;
        out.iterations = tab.iterations();
        return out;
    }
    tab.expel_artificials();
    const auto outcome = tab.optimize(false);
    out.iterations = tab.iterations();
    if (outcome == Tableau::Outcome::Unbounded) {
        out.status = LpStatus::Unbounded;
        return out;
    }

    const auto y = tab.primal(refine);
    out.status = LpStatus::Optimal;
    out.basis_size = tab.rows();
    for (double v : y) {
        if (v > opt.feasibility_tolerance) ++out.nonzero_count;
    }
    out.values.resize(problem.num_columns());
    for (std::size_t j = 0; j < problem.num_columns(); ++j) {
        const auto& m = sf.map[j];
        switch (m.kind) {
            case MapKind::Fixed: out.values[j] = m.offset; break;
            case MapKind::Shift: out.values[j] = m.offset + y[m.first]; break;
            case MapKind::Mirror: out.values[j] = m.offset - y[m.first]; break;
            case MapKind::Free: out.values[j] = y[m.first] - y[m.first + 1]; break;
        }
        // Keep shifted columns inside their finite upper bounds.
        out.values[j] = std::clamp(out.values[j], lower[j], std::max(lower[j], upper[j]));
    }
    out.objective = problem.evaluate(out.values);
    return out;
}

LpSolution solve_lp(const model::MilpProblem& problem, std::span<const double> lower, std::span<const double> upper,
                    const SolverOptions& options)
{
    options.validate();
    return solve_lp_bounded(problem, lower, upper, options, true);
}

LpSolution solve_lp(const model::MilpProblem& problem, const SolverOptions& options)
{
    return solve_lp(problem, problem.lower(), problem.upper(), options);
}

}  // namespace ohres::solver
