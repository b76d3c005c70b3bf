#pragma once

#include <stdexcept>
#include <string>

namespace locstat {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IntervalError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ScaleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegeneratePartitionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyEnsembleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientDesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solver breakdown; carries the offending residual when known.
struct NumericalError : std::runtime_error {
    double residual = 0.0;
    explicit NumericalError(const std::string& what, double res = 0.0)
        : std::runtime_error(what), residual(res) {}
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace locstat
