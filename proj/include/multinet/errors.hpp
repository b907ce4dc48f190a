#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace multinet {

// Data-level failures carry enough context to point at the offending cell.
// Argument misuse throws std::invalid_argument directly.

class EmptyLayerError : public std::runtime_error {
public:
    EmptyLayerError(int year, std::string layer)
        : std::runtime_error("layer '" + layer + "' in year " + std::to_string(year) +
                             " has no positive weights"),
          year_(year), layer_(std::move(layer)) {}

    int year() const noexcept { return year_; }
    const std::string& layer() const noexcept { return layer_; }

private:
    int year_;
    std::string layer_;
};

class DimensionError : public std::runtime_error {
public:
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) +
                             (column.empty() ? "" : ", column '" + column + "'") + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::string column_;
};

// Bad data values (negative flows, self-loops) as opposed to unparseable text.
class ValidationError : public ParseError {
public:
    using ParseError::ParseError;
};

class IngestError : public std::runtime_error {
public:
    explicit IngestError(const std::string& what) : std::runtime_error(what) {}
};

// Duplicate (year, layer, exporter, importer) keys under DuplicatePolicy::Error.
class ConflictError : public std::runtime_error {
public:
    ConflictError(const std::string& what, std::vector<std::string> keys)
        : std::runtime_error(what), keys_(std::move(keys)) {}

    const std::vector<std::string>& keys() const noexcept { return keys_; }

private:
    std::vector<std::string> keys_;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace multinet
