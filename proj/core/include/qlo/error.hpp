#pragma once

#include <stdexcept>
#include <string>

namespace qlo {

/// Shapes of the inputs do not fit together (vector length, matrix size, index).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A parameter lies outside the range the requested operation is defined on.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exhaustive enumeration was refused because the instance exceeds the cap.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A constructive procedure found that its input violates the hypothesis it
/// relies on (for instance, no nonzero off-diagonal entry where one must exist).
class HypothesisViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed JSON / text input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qlo
