#pragma once

#include <stdexcept>
#include <string>

namespace entsub {

/// Precondition or malformed-input violation. CLI exit code 2.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A state list that was required to be linearly independent is not.
struct LinearDependenceError : InvalidInput {
    using InvalidInput::InvalidInput;
};

/// Complement of a full subspace requested (s = D).
struct EmptyComplementError : InvalidInput {
    using InvalidInput::InvalidInput;
};

/// det(alpha*A + beta*B) vanishes identically; the pencil carries no root information.
struct DegeneratePencilError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Counting requested where the generic count is infinite (s > s_max + 1).
/// Carries the formula verdict so callers can report it instead of a count.
struct CountingUnsupported : InvalidInput {
    explicit CountingUnsupported(const std::string& msg)
        : InvalidInput(msg), formula_verdict("infinite") {}
    std::string formula_verdict;
};

/// Custom POVM weights left the remainder element indefinite.
struct IndefiniteRemainderError : InvalidInput {
    using InvalidInput::InvalidInput;
};

/// Born probabilities outside tolerance; inputs violated the POVM contract.
struct NumericalConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace entsub
