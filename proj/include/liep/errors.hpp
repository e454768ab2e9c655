#pragma once

#include <stdexcept>
#include <string>

namespace liep {

// Thrown when a context parameter is unusable (composite p, undersized N, ...).
struct NotPrime : std::invalid_argument {
    explicit NotPrime(const std::string& msg) : std::invalid_argument(msg) {}
};

struct PrecisionTooSmall : std::invalid_argument {
    explicit PrecisionTooSmall(const std::string& msg) : std::invalid_argument(msg) {}
};

// Mixing elements from different PrimeCtx instances.
struct ContextMismatch : std::invalid_argument {
    explicit ContextMismatch(const std::string& msg) : std::invalid_argument(msg) {}
};

// A query needs more kappa-adic digits than the element carries.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotCoprime : std::invalid_argument {
    explicit NotCoprime(const std::string& msg) : std::invalid_argument(msg) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& msg) : std::out_of_range(msg) {}
};

struct NotSurjective : std::domain_error {
    explicit NotSurjective(const std::string& msg) : std::domain_error(msg) {}
};

struct NotOneParameter : std::domain_error {
    explicit NotOneParameter(const std::string& msg) : std::domain_error(msg) {}
};

// Internal consistency failure: a certified bound was violated, which signals
// an implementation bug rather than bad input.
struct BoundViolation : std::logic_error {
    explicit BoundViolation(const std::string& msg) : std::logic_error(msg) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnknownSuite : std::invalid_argument {
    explicit UnknownSuite(const std::string& msg) : std::invalid_argument(msg) {}
};

} // namespace liep
