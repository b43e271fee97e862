#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "curvecount/count_value.hpp"
#include "curvecount/problem.hpp"

namespace curvecount {

// Boundary bookkeeping for a one-dimensional family of rational curves.
//
// A reducible member splits as C1 u C2 with degrees d1 + d2 = d and the
// conditions distributed over the two components. For each side the family
// of candidate components has dimension
//     delta_i = moduli_dimension(n, d_i) - sum_{j in S_i} (a_j - 1),
// and the splitting occurs in the one-dimensional family exactly when
// 0 <= delta_i <= n-2 on both sides. The component loci then meet along a
// generic linear subspace of codimension c_i = delta_i + 1 on each side,
// with c1 + c2 = n, so the number of configurations is the product of two
// strictly lower-degree counts.

/// Evaluator for nested counts; must accept any excess-0 problem.
using CountFn = std::function<Count(const Problem&)>;

/// One reducible-fiber configuration of a one-dimensional family.
struct Splitting {
    int d1 = 0, d2 = 0;               // component degrees, d1 + d2 = d
    std::vector<std::size_t> side1;   // condition indices met by C1 (contains pin1)
    std::vector<std::size_t> side2;   // condition indices met by C2
    int delta1 = 0, delta2 = 0;       // side family dimensions
    int c1 = 0, c2 = 0;               // node condition codimensions, c1 + c2 = n
    Count weight;                     // N_{d1}(side1, c1) * N_{d2}(side2, c2)
};

/// All valid splittings of the excess-1 problem `p` with pin1 on side 1
/// and, when given, pin2 on side 2. Weights are filled through `subcount`
/// at strictly smaller degree.
inline std::vector<Splitting> enumerate_splittings(const Problem& p, std::size_t pin1,
                                                   std::optional<std::size_t> pin2,
                                                   const CountFn& subcount) {
    int excess = excess_dimension(p);
    if (excess != 1) throw DimensionMismatch(excess);
    const auto& a = p.conds.codims();
    const std::size_t k = a.size();
    internal_check(pin1 < k && (!pin2 || (*pin2 < k && *pin2 != pin1)),
                   "enumerate_splittings: bad pins");

    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < k; ++i)
        if (i != pin1 && (!pin2 || i != *pin2)) free_idx.push_back(i);

    std::vector<Splitting> out;
    for (int d1 = 1; d1 < p.d; ++d1) {
        const int d2 = p.d - d1;
        const int dim1 = moduli_dimension(p.n, d1);
        const int dim2 = moduli_dimension(p.n, d2);
        for (std::size_t mask = 0; mask < (std::size_t{1} << free_idx.size()); ++mask) {
            Splitting s;
            s.d1 = d1;
            s.d2 = d2;
            s.side1.push_back(pin1);
            if (pin2) s.side2.push_back(*pin2);
            int w1 = a[pin1] - 1;
            int w2 = pin2 ? a[*pin2] - 1 : 0;
            for (std::size_t b = 0; b < free_idx.size(); ++b) {
                if (mask & (std::size_t{1} << b)) {
                    s.side1.push_back(free_idx[b]);
                    w1 += a[free_idx[b]] - 1;
                } else {
                    s.side2.push_back(free_idx[b]);
                    w2 += a[free_idx[b]] - 1;
                }
            }
            s.delta1 = dim1 - w1;
            s.delta2 = dim2 - w2;
            if (s.delta1 < 0 || s.delta1 > p.n - 2) continue;
            if (s.delta2 < 0 || s.delta2 > p.n - 2) continue;
            s.c1 = s.delta1 + 1;
            s.c2 = s.delta2 + 1;
            internal_check(s.c1 + s.c2 == p.n, "splitting: node codimensions do not add to n");

            std::vector<int> v1, v2;
            for (std::size_t i : s.side1) v1.push_back(a[i]);
            for (std::size_t i : s.side2) v2.push_back(a[i]);
            v1.push_back(s.c1);
            v2.push_back(s.c2);
            Problem q1(p.n, d1, std::move(v1));
            Problem q2(p.n, d2, std::move(v2));
            internal_check(q1.d < p.d && q2.d < p.d, "splitting: subquery degree not smaller");
            internal_check(excess_dimension(q1) == 0 && excess_dimension(q2) == 0,
                           "splitting: subquery excess not 0");
            s.weight = subcount(q1) * subcount(q2);
            out.push_back(std::move(s));
        }
    }
    return out;
}

/// Intersection number s_i . R_j: reducible fibers with the i-th marked
/// point and the j-th marked point on opposite components, each weighted by
/// its configuration count. Symmetric in (i, j) by the side-swap bijection.
inline Count section_dot_R(const Problem& p, std::size_t i, std::size_t j, const CountFn& subcount) {
    Count total = 0;
    for (const auto& s : enumerate_splittings(p, i, j, subcount)) total += s.weight;
    return total;
}

/// Sum of (deg F)^2 over fiber components F missing the i-th section.
inline Count boundary_square_sum(const Problem& p, std::size_t i, const CountFn& subcount) {
    Count total = 0;
    for (const auto& s : enumerate_splittings(p, i, std::nullopt, subcount))
        total += Count(s.d2) * s.d2 * s.weight;
    return total;
}

/// Sum of deg F over fiber components missing section i but meeting
/// section j.
inline Count boundary_linear_sum(const Problem& p, std::size_t i, std::size_t j, const CountFn& subcount) {
    Count total = 0;
    for (const auto& s : enumerate_splittings(p, i, j, subcount)) total += Count(s.d2) * s.weight;
    return total;
}

}  // namespace curvecount
