// errors.hpp - failure categories that callers need to tell apart

#pragma once

#include <stdexcept>
#include <string>

namespace qthermo {

/// A closed form and the spectral evaluator disagree beyond tolerance.
class MismatchError : public std::runtime_error {
public:
    explicit MismatchError(const std::string& what) : std::runtime_error(what) {}
};

/// A truncated series did not meet its requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qthermo
