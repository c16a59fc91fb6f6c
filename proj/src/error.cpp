#include "ohres/error.hpp"

#include <utility>

namespace ohres {

namespace {

std::string with_location(const std::string& message, const std::string& source, std::size_t line)
{
    if (source.empty() && line == 0) return message;
    std::string out = source.empty() ? std::string("<input>") : source;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + message;
}

}  // namespace

DataError::DataError(const std::string& message, std::string source, std::size_t line)
    : Error(with_location(message, source, line)), source_(std::move(source)), line_(line)
{
}

PivotError::PivotError(const std::string& message, std::size_t row, std::size_t column)
    : Error(message + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")"),
      row_(row),
      column_(column)
{
}

BudgetError::BudgetError(const std::string& message, double required)
    : Error(message), required_(required)
{
}

}  // namespace ohres
