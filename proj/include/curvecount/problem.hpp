#pragma once

#include <string>
#include <utility>

#include "curvecount/condition_vector.hpp"
#include "curvecount/count_value.hpp"
#include "curvecount/errors.hpp"

namespace curvecount {

/// Dimension of the space of irreducible nonsingular rational curves of
/// degree d in P^n: (n+1)d + n - 3.
///
/// Note: the formula is sometimes rendered (n+1)d - (n-3), which agrees
/// at n = 3 but fails the Grassmannian check for lines in higher P^n
/// (dim G(1,n) = 2(n-1); at n = 4, d = 1 it would give 4 instead of 6).
/// The adopted sign also balances the node bookkeeping c_1 + c_2 = n of
/// the boundary enumeration for every n.
inline int moduli_dimension(int n, int d) {
    if (n < 3) throw InvalidInput("ambient dimension must satisfy n >= 3, got n = " + std::to_string(n));
    if (d < 1) throw InvalidInput("curve degree must satisfy d >= 1, got d = " + std::to_string(d));
    return (n + 1) * d + n - 3;
}

/// One enumerative query: curves of degree d in P^n meeting generic linear
/// subspaces of the given codimensions.
struct Problem {
    int n = 3;
    int d = 1;
    ConditionVector conds;

    Problem() = default;
    Problem(int n_, int d_, ConditionVector conds_) : n(n_), d(d_), conds(std::move(conds_)) {
        moduli_dimension(n, d);  // validates n, d
    }
    Problem(int n_, int d_, std::vector<int> codims)
        : Problem(n_, d_, ConditionVector(std::move(codims))) {}

    std::string key() const {
        return std::to_string(n) + " " + std::to_string(d) + " " + conds.str();
    }

    friend bool operator==(const Problem&, const Problem&) = default;
    friend auto operator<=>(const Problem&, const Problem&) = default;
};

/// Dimension of the incidence family B: moduli dimension minus the number
/// of imposed constraints. 0 for a finite count, 1 for a genus query.
inline int excess_dimension(const Problem& p) {
    return moduli_dimension(p.n, p.d) - p.conds.weight();
}

struct Canonicalized {
    Problem problem;     // codim-1 entries stripped, still descending-sorted
    Count factor = 1;    // d per stripped hyperplane entry
    bool vanishes = false;  // some a_i > n
};

/// Strips hyperplane conditions (each contributes a factor d) and flags
/// vanishing queries (some a_i > n). Idempotent on its own output.
inline Canonicalized canonicalize(const Problem& p) {
    Canonicalized out;
    std::vector<int> kept;
    kept.reserve(p.conds.size());
    Count factor = 1;
    bool vanishes = false;
    for (int a : p.conds.codims()) {
        if (a > p.n) vanishes = true;
        if (a == 1)
            factor *= p.d;
        else
            kept.push_back(a);
    }
    out.problem = Problem(p.n, p.d, ConditionVector(std::move(kept)));
    out.factor = factor;
    out.vanishes = vanishes;
    return out;
}

}  // namespace curvecount
