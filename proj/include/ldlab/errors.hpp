#ifndef LDLAB_ERRORS_HPP
#define LDLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ldlab {

/// Invalid parameters or inputs (bad field size, mismatched levels, ...).
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Unique decoding found no (or more than one) candidate inside the radius.
struct DecodeFailure : std::runtime_error {
    explicit DecodeFailure(const std::string& msg) : std::runtime_error(msg) {}
};

/// Pruned candidate space is larger than the verified design bound allows.
struct ListDimensionExceeded : std::runtime_error {
    explicit ListDimensionExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

/// The decoder's functional identity vanished entirely; every message is consistent.
struct DegenerateIdentity : std::runtime_error {
    explicit DegenerateIdentity(const std::string& msg) : std::runtime_error(msg) {}
};

/// Exhaustive enumeration would exceed the configured limit.
struct EnumerationLimit : std::runtime_error {
    explicit EnumerationLimit(const std::string& msg) : std::runtime_error(msg) {}
};

/// A randomized search ran out of attempts.
struct SearchExhausted : std::runtime_error {
    explicit SearchExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ldlab

#endif
