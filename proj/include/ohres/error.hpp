#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ohres {

/// Base of every exception thrown by the toolkit. The C API maps each
/// subclass onto a status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad scenario content, unknown flags, out-of-range overrides.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input data. Carries the source name and 1-based line when known.
class DataError : public Error {
public:
    DataError(const std::string& message, std::string source = {}, std::size_t line = 0);

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

/// A physical or numerical parameter violates its invariants.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// The sizing problem cannot be assembled from the given scenario.
class AssemblyError : public Error {
public:
    using Error::Error;
};

/// A simplex pivot element fell below the pivot tolerance.
class PivotError : public Error {
public:
    PivotError(const std::string& message, std::size_t row, std::size_t column);

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// Enumeration or search budget exceeded before any work was attempted.
class BudgetError : public Error {
public:
    BudgetError(const std::string& message, double required);

    double required() const noexcept { return required_; }

private:
    double required_;
};

}  // namespace ohres
