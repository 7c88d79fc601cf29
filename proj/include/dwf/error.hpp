#pragma once

#include <stdexcept>
#include <string>

namespace dwf {

/// Input that violates a precondition (bad dimension, non-PSD state,
/// malformed config). Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A channel kernel left its admissible range (|Λ| > 1, λ ∉ [0,1]).
/// Maps to CLI exit code 2.
class KernelViolation : public std::runtime_error {
public:
    explicit KernelViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dwf
