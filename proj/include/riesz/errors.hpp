#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

// Bad input: poles, out-of-range parameters, violated preconditions.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical machinery gave up (quadrature, root bracketing, series).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A legitimate "there is no answer" outcome, e.g. balance_distance.
class NoSolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace riesz
