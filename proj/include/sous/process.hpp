#pragma once

#include <cstdint>
#include <string>

#include "sous/errors.hpp"
#include "sous/strings.hpp"

namespace sous {

using ProcessId = std::uint32_t;
using Seconds = std::int64_t;

/// A rewrite step from one set of descriptive strings to another, with the
/// total time it takes, the free (passive) time it contains, and the
/// imperative that tells the cook how to perform it.
struct Process {
    ProcessId id = 0;
    StringSet input;
    StringSet output;
    Seconds time = 0;
    Seconds f_time = 0;
    std::string direction;

    bool is_ghost() const { return time == 0 && f_time == 0 && direction.empty(); }
};

inline void validate_process(const Process& p) {
    if (p.input.empty()) throw ValidationError("process input set is empty");
    if (p.output.empty()) throw ValidationError("process output set is empty");
    if (p.time < 0) throw ValidationError("process time is negative");
    if (p.f_time < 0) throw ValidationError("process f time is negative");
    if (p.f_time > p.time) throw ValidationError("process f time exceeds its time");
}

/// requires(a, b): a can only start after b, because a consumes something b produces.
inline bool depends_on(const Process& a, const Process& b) {
    return a.input.intersects(b.output);
}

/// Neither process requires the other.
inline bool independent(const Process& a, const Process& b) {
    return !depends_on(a, b) && !depends_on(b, a);
}

} // namespace sous
