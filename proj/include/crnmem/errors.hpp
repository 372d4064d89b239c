#pragma once

#include <stdexcept>
#include <string>

namespace crnmem {

// Text-format error with source position (1-based).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line, int column)
        : std::runtime_error("line " + std::to_string(line) + ", col " +
                             std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Trajectory blow-up or step underflow during integration.
class SimulationError : public std::runtime_error {
public:
    enum class Kind { unbounded_trajectory, step_underflow };

    SimulationError(Kind kind, std::string msg, double time)
        : std::runtime_error(std::move(msg)), kind_(kind), time_(time) {}

    Kind kind() const { return kind_; }
    double time() const { return time_; }

private:
    Kind kind_;
    double time_;
};

// A stated precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Initial concentration sits in the residual set of a memory map.
class ResidualInitError : public std::runtime_error {
public:
    explicit ResidualInitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Dynamics escape the range covered by a memory map (beta > c).
class CoverageError : public std::runtime_error {
public:
    explicit CoverageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Sampled evidence contradicts a single-valued transition function.
class NondeterminismError : public std::runtime_error {
public:
    explicit NondeterminismError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace crnmem
