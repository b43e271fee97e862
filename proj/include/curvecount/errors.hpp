#pragma once

#include <stdexcept>
#include <string>

namespace curvecount {

/// Malformed input (bad n, d, codimension entries, flags, ...).
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// A query whose excess dimension does not match the operation
/// (0 for counts, 1 for genus). Kept distinct from the vanishing rule
/// so typos are not silently reported as 0.
struct DimensionMismatch : std::runtime_error {
    int excess;
    explicit DimensionMismatch(int excess_)
        : std::runtime_error("dimension mismatch: excess = " + std::to_string(excess_)),
          excess(excess_) {}
};

/// An internal identity failed (integrality, nonnegativity, recursion
/// well-foundedness). Always fatal; never downgraded to a warning.
struct ConsistencyError : std::logic_error {
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

/// Cache file rejected; carries the 1-based offending line.
struct CacheError : std::runtime_error {
    long line;
    CacheError(long line_, const std::string& what)
        : std::runtime_error("cache line " + std::to_string(line_) + ": " + what),
          line(line_) {}
};

/// No valid thickening exists for a genus query.
struct NoThickening : std::runtime_error {
    explicit NoThickening(const std::string& what) : std::runtime_error(what) {}
};

inline void internal_check(bool ok, const char* what) {
    if (!ok) throw ConsistencyError(what);
}

}  // namespace curvecount
