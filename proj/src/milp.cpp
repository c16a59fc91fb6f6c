#include "ohres/milp.hpp"

#include <algorithm>
#include <stdexcept>

#include "ohres/error.hpp"

namespace ohres::model {

std::size_t MilpProblem::add_variable(std::string name, VarKind kind, double lower, double upper, double cost)
{
    if (index_.count(name) != 0) throw AssemblyError("duplicate variable name '" + name + "'");
    if (lower > upper) throw AssemblyError("variable '" + name + "' has lower bound above upper bound");
    const std::size_t col = names_.size();
    index_.emplace(name, col);
    names_.push_back(std::move(name));
    kind_.push_back(kind);
    lower_.push_back(lower);
    upper_.push_back(upper);
    cost_.push_back(cost);
    return col;
}

std::size_t MilpProblem::add_constraint(std::string name, std::string family, std::vector<Term> terms,
                                        Relation relation, double rhs)
{
    for (const auto& t : terms) {
        if (t.column >= names_.size()) {
            throw AssemblyError("constraint '" + name + "' references unknown column " + std::to_string(t.column));
        }
    }
    rows_.push_back({std::move(name), std::move(family), std::move(terms), relation, rhs});
    return rows_.size() - 1;
}

std::size_t MilpProblem::column(std::string_view name) const
{
    const auto it = index_.find(name);
    if (it == index_.end()) throw std::out_of_range("unknown column '" + std::string(name) + "'");
    return it->second;
}

bool MilpProblem::has_column(std::string_view name) const
{
    return index_.find(name) != index_.end();
}

std::size_t MilpProblem::count_kind(VarKind kind) const
{
    return static_cast<std::size_t>(std::count(kind_.begin(), kind_.end(), kind));
}

std::map<std::string, std::size_t> MilpProblem::family_tally() const
{
    std::map<std::string, std::size_t> tally;
    for (const auto& r : rows_) ++tally[r.family];
    return tally;
}

double MilpProblem::evaluate(const std::vector<double>& x) const
{
    double z = 0.0;
    for (std::size_t j = 0; j < cost_.size(); ++j) z += cost_[j] * x[j];
    return z;
}

MilpProblem MilpProblem::scaled_objective(double factor) const
{
    MilpProblem copy = *this;
    for (auto& c : copy.cost_) c *= factor;
    return copy;
}

}  // namespace ohres::model
