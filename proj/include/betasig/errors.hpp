#pragma once

#include <stdexcept>
#include <string>

namespace betasig {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument lies outside a function's mathematical domain
/// (non-positive shape, threshold outside (0,1), epsilon >= 1, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Input data that cannot be analyzed: missing class, fewer samples than
/// required, zero variance, infeasible moments, malformed CSV.
class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(what) {}
};

/// An iterative numerical method failed to converge, or a computed value
/// violated an invariant by more than rounding can explain.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

} // namespace betasig
