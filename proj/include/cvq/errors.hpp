#pragma once

#include <stdexcept>
#include <string>

namespace cvq {

// Probability mass leaked past the truncated Fock window.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation annihilated the state (norm below the zero threshold).
struct ZeroStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical routine failed to converge or to meet its accuracy contract.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Root-finding bracket does not straddle the target.
struct BracketError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace cvq
