#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plk {

/// Raised when the Gram factorization hits a pivot below tolerance.
class SingularGramError : public std::runtime_error {
public:
    SingularGramError(const std::string& message, std::size_t node_index, double node_value,
                      bool forced_zero_conflict)
        : std::runtime_error(message),
          node_index_(node_index),
          node_value_(node_value),
          forced_zero_conflict_(forced_zero_conflict) {}

    /// Original index of the node whose pivot failed.
    std::size_t node_index() const noexcept { return node_index_; }
    double node_value() const noexcept { return node_value_; }
    /// True when the offending node is a forced zero of the kernel's space
    /// but carries a nonzero data value, so the data cannot lie in the space.
    bool forced_zero_conflict() const noexcept { return forced_zero_conflict_; }

private:
    std::size_t node_index_;
    double node_value_;
    bool forced_zero_conflict_;
};

class MissingDerivativeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedKindError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by slope fitting when fewer than three rows exceed the error floor.
class DegenerateFitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace plk
