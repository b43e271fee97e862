#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "curvecount/errors.hpp"

namespace curvecount {

/// Exact signed integer for all counts and intersection numbers.
/// Degree counts N are >= 0; m-values and residuals may be negative.
using Count = boost::multiprecision::cpp_int;

inline std::string to_string(const Count& v) { return v.str(); }

/// Strict decimal parse (optional leading '-', digits only).
inline std::optional<Count> parse_count(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return std::nullopt;
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') return std::nullopt;
    return Count(s);
}

/// Exact halving with an integrality check.
inline Count halve_exact(const Count& doubled, const char* context) {
    internal_check(doubled % 2 == 0, context);
    return doubled / 2;
}

}  // namespace curvecount
