#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ohres::model {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { Equal, LessEqual, GreaterEqual };
enum class VarKind { Continuous, Integer, Binary };

struct Term {
    std::size_t column;
    double coefficient;
};

struct Constraint {
    std::string name;
    std::string family;
    std::vector<Term> terms;
    Relation relation;
    double rhs;
};

/// Solver-agnostic mixed-integer linear program: minimise c'x subject to
/// linear rows and column bounds. Built once, then treated as immutable.
class MilpProblem {
public:
    std::size_t add_variable(std::string name, VarKind kind, double lower, double upper, double cost);
    std::size_t add_constraint(std::string name, std::string family, std::vector<Term> terms, Relation relation,
                               double rhs);

    std::size_t num_columns() const noexcept { return names_.size(); }
    std::size_t num_rows() const noexcept { return rows_.size(); }

    const std::vector<double>& objective() const noexcept { return cost_; }
    const std::vector<double>& lower() const noexcept { return lower_; }
    const std::vector<double>& upper() const noexcept { return upper_; }
    const std::vector<VarKind>& kinds() const noexcept { return kind_; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<Constraint>& rows() const noexcept { return rows_; }

    bool is_integral(std::size_t column) const { return kind_[column] != VarKind::Continuous; }

    /// Column index by name; throws std::out_of_range when unknown.
    std::size_t column(std::string_view name) const;
    bool has_column(std::string_view name) const;

    std::size_t count_kind(VarKind kind) const;
    std::map<std::string, std::size_t> family_tally() const;

    /// Objective value c'x.
    double evaluate(const std::vector<double>& x) const;

    /// Copy with every cost multiplied by `factor`.
    MilpProblem scaled_objective(double factor) const;

private:
    std::vector<double> cost_;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<VarKind> kind_;
    std::vector<std::string> names_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::vector<Constraint> rows_;
};

}  // namespace ohres::model
