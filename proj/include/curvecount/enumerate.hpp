#pragma once

#include <vector>

#include "curvecount/problem.hpp"

namespace curvecount {

/// All descending vectors with entries in [2, n] and sum of (a_i - 1)
/// equal to `weight`, in lexicographic order.
inline std::vector<ConditionVector> canonical_vectors(int n, int weight) {
    std::vector<ConditionVector> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_entry) -> void {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int a = 2; a <= std::min(max_entry, remaining + 1); ++a) {
            cur.push_back(a);
            self(self, remaining - (a - 1), a);
            cur.pop_back();
        }
    };
    if (weight >= 0) rec(rec, weight, n);
    return out;
}

/// Canonical problems with excess 0 (finite counts) for given n, d.
inline std::vector<Problem> excess0_problems(int n, int d) {
    std::vector<Problem> out;
    for (auto& v : canonical_vectors(n, moduli_dimension(n, d)))
        out.emplace_back(n, d, std::move(v));
    return out;
}

/// Canonical problems with excess 1 (one-dimensional families).
inline std::vector<Problem> excess1_problems(int n, int d) {
    std::vector<Problem> out;
    for (auto& v : canonical_vectors(n, moduli_dimension(n, d) - 1))
        out.emplace_back(n, d, std::move(v));
    return out;
}

}  // namespace curvecount
