#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sous {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input data failed a structural invariant (empty string, f_time > time, ...).
struct ValidationError : Error {
    using Error::Error;
};

/// An action was applied to a food class whose indicator for it is disabled.
struct IndicatorDisabled : Error {
    using Error::Error;
};

struct DuplicateProcessId : Error {
    using Error::Error;
};

/// Goal resolution revisited a string it had already expanded.
struct CyclicKnowledgeBase : Error {
    using Error::Error;
};

struct EmptyDish : Error {
    using Error::Error;
};

/// The requirement relation over a process set contains a cycle.
struct CyclicPrecedence : Error {
    using Error::Error;
};

/// Enumeration produced more orders than the configured cap.
struct OrderExplosion : Error {
    std::uint64_t count_reached;
    OrderExplosion(std::uint64_t count, const std::string& what)
        : Error(what), count_reached(count) {}
};

/// A list handed to the compressor violates its own precedence graph.
struct NotPermissible : Error {
    using Error::Error;
};

/// Instance exceeds a brute-force size guard.
struct TooLarge : Error {
    using Error::Error;
};

/// Malformed input file; message carries the file and, when known, the line.
struct ParseError : Error {
    using Error::Error;
};

} // namespace sous
