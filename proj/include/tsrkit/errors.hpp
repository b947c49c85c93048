#pragma once

#include <stdexcept>
#include <string>

namespace tsrkit {

/// Input violates a documented precondition (wrong dimensions, zero divisor, ...).
using InvalidArgument = std::invalid_argument;

/// S has a0 = 0, so f_S and lambda^n share the factor lambda.
class NotACandidate : public std::invalid_argument {
  public:
    explicit NotACandidate(const std::string& what) : std::invalid_argument(what) {}
};

/// A composite could not be split within the iteration budget.
class FactoringIncomplete : public std::runtime_error {
  public:
    explicit FactoringIncomplete(const std::string& what) : std::runtime_error(what) {}
};

/// A cost guard (factoring bound, brute-force step bound, retry budget) was hit.
class LimitExceeded : public std::runtime_error {
  public:
    explicit LimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed text input (hex, spec files, factorization strings).
class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tsrkit
