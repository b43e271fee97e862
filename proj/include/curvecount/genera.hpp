#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "curvecount/boundary.hpp"
#include "curvecount/degrees.hpp"
#include "curvecount/problem.hpp"
#include "curvecount/trace.hpp"

namespace curvecount {

// Genus data of a one-dimensional incidence family B(a.).
//
// Enlarging some of the condition subspaces (codimension a_i^+ <= a_i) and
// dropping the rest yields a family B+ of dimension n-1 whose universal
// map to P^n must be generically finite; Riemann-Hurwitz on that map
// expresses deg(K_{B+}|_B) through counts, m-values and the ramification
// divisor, and the normal bundle of B in B+ contributes one term per
// condition, giving deg K_B.
//
// The ramification restricted to the universal curve over B consists of
// the marked sections with multiplicity (a_i^+ - 1) plus a boundary part:
// over a reducible member, a component whose family inside B+ sweeps out
// fewer than n-1 dimensions (side dimension delta^+ <= n-3 against the
// thickened conditions) lies in a divisor contracted by the universal
// map, which carries ramification multiplicity n-2-delta^+. Every valid
// thickening must produce the same deg K_B; that independence is enforced
// as the regression check on all of these terms.

/// Choice of a thickening: the first ell() conditions (in canonical
/// descending order) are retained with codimensions plus_codims, the rest
/// are dropped. Shape-valid when 2 <= a_i^+ <= a_i for every retained i
/// and sum (a_i^+ - 1) = moduli_dimension - (n-1), i.e. dim B+ = n-1.
/// A valid thickening must additionally give a generically finite
/// universal map (see thickening_generically_finite).
struct ThickeningSpec {
    std::vector<int> plus_codims;

    std::size_t ell() const { return plus_codims.size(); }
};

inline int thickening_budget(const Problem& p) {
    return moduli_dimension(p.n, p.d) - (p.n - 1);
}

inline bool thickening_shape_valid(const Problem& p, const ThickeningSpec& t) {
    if (t.ell() > p.conds.size()) return false;
    int total = 0;
    for (std::size_t i = 0; i < t.ell(); ++i) {
        int plus = t.plus_codims[i];
        if (plus < 2 || plus > p.conds.at(i)) return false;
        total += plus - 1;
    }
    return total == thickening_budget(p);
}

/// The degree of the universal map of B+ is the number of its curves
/// through a generic point; the thickening device needs it positive.
inline bool thickening_generically_finite(CountEngine& engine, const Problem& p,
                                          const ThickeningSpec& t) {
    std::vector<int> conds = t.plus_codims;
    conds.push_back(p.n);
    return engine.degree_count(Problem(p.n, p.d, std::move(conds))) > 0;
}

/// All shape-valid thickenings, greediest first (each slot tries its
/// largest admissible codimension before smaller ones).
inline std::vector<ThickeningSpec> enumerate_shape_thickenings(const Problem& p) {
    int e = excess_dimension(p);
    if (e != 1) throw DimensionMismatch(e);
    std::vector<ThickeningSpec> out;
    std::vector<int> cur;
    const auto& a = p.conds.codims();
    auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (remaining == 0) {
            out.push_back({cur});
            return;
        }
        if (i == a.size()) return;
        for (int plus = std::min(a[i], remaining + 1); plus >= 2; --plus) {
            cur.push_back(plus);
            self(self, i + 1, remaining - (plus - 1));
            cur.pop_back();
        }
    };
    rec(rec, 0, thickening_budget(p));
    return out;
}

/// Shape-valid thickenings with a generically finite universal map.
inline std::vector<ThickeningSpec> enumerate_thickenings(CountEngine& engine, const Problem& p) {
    std::vector<ThickeningSpec> out;
    for (auto& t : enumerate_shape_thickenings(p))
        if (thickening_generically_finite(engine, p, t)) out.push_back(std::move(t));
    return out;
}

/// Greedy valid thickening: keep conditions from the largest codimension
/// down at full codimension until the budget is met, lowering the last
/// retained entry as needed, and drop the rest. When the greedy spec is
/// degenerate (universal map not generically finite), the next spec in
/// the greediest-first order is taken.
inline ThickeningSpec choose_thickening(CountEngine& engine, const Problem& p) {
    for (auto& t : enumerate_shape_thickenings(p))
        if (thickening_generically_finite(engine, p, t)) return std::move(t);
    throw NoThickening("no valid thickening for " + p.key());
}

/// deg K_B evaluated through the thickening t. `eval_section` selects the
/// section the relative canonical class is paired against; the result is
/// independent of it (default: the first condition, where the pairing
/// with the blown-down fiber components drops out).
inline Count canonical_degree(CountEngine& engine, const Problem& p, const ThickeningSpec& t,
                              std::size_t eval_section = 0, TraceBuilder* tr = nullptr,
                              TracePtr* node_out = nullptr) {
    int excess = excess_dimension(p);
    if (excess != 1) throw DimensionMismatch(excess);
    for (int a : p.conds.codims())
        if (a > p.n) throw InvalidInput("canonical_degree: condition codimension exceeds n (empty family)");
    if (!thickening_shape_valid(p, t))
        throw InvalidInput("canonical_degree: invalid thickening for " + p.key());
    if (!thickening_generically_finite(engine, p, t))
        throw InvalidInput("canonical_degree: thickening is not generically finite for " + p.key());
    const auto& a = p.conds.codims();
    const std::size_t k = a.size();
    const std::size_t e = eval_section;
    if (e >= k) throw InvalidInput("canonical_degree: evaluation section out of range");

    std::vector<TracePtr> children;
    auto count = [&](const Problem& q) -> Count {
        if (tr) {
            auto [val, node] = engine.degree_count_traced(q, *tr);
            TraceBuilder::attach(children, node);
            return val;
        }
        return engine.degree_count(q);
    };
    auto m_at = [&](std::size_t i) -> Count {
        TracePtr node;
        Count v = engine.m_section(p, i, tr, tr ? &node : nullptr);
        if (tr && node) TraceBuilder::attach(children, node);
        return v;
    };

    Count m_e = m_at(e);
    Count m_0 = (e == 0) ? m_e : m_at(0);

    // Pairing of the pulled-back canonical class of B+ against s_e:
    // the L-term, the section part of the ramification, ...
    Count base = Count(-(p.n + 1)) * count(Problem(p.n, p.d, p.conds.incremented(e)));
    for (std::size_t i = 0; i < t.ell(); ++i) {
        Count si_se = (i == e) ? -m_e : count(Problem(p.n, p.d, p.conds.merged(i, e)));
        base += Count(t.plus_codims[i] - 1) * si_se;
    }
    // ... the boundary part of the ramification (components contracted
    // inside the thickened family and meeting s_e) ...
    {
        CountFn fn = [&](const Problem& q) { return count(q); };
        for (const auto& s : enumerate_splittings(p, e, std::nullopt, fn)) {
            int delta_plus = moduli_dimension(p.n, s.d1);
            for (std::size_t i : s.side1)
                if (i < t.ell()) delta_plus -= t.plus_codims[i] - 1;
            internal_check(delta_plus >= 0, "canonical_degree: negative thickened side dimension");
            if (delta_plus <= p.n - 3) base += Count(p.n - 2 - delta_plus) * s.weight;
        }
    }
    // ... and the relative canonical class of the ruled surface blown
    // down along the first section.
    if (e == 0) {
        base += -m_0;
    } else {
        TracePtr node;
        Count r0_se = engine.section_dot_R(p, 0, e, tr, tr ? &node : nullptr);
        if (tr && node) TraceBuilder::attach(children, node);
        base += 2 * count(Problem(p.n, p.d, p.conds.merged(0, e))) + m_0 - r0_se;
    }

    // Normal bundle of B in B+, one term per condition.
    Count normals = 0;
    for (std::size_t i = 0; i < k; ++i) {
        Count bumped = count(Problem(p.n, p.d, p.conds.incremented(i)));
        if (i < t.ell())
            normals += Count(a[i] - t.plus_codims[i]) * bumped;
        else
            normals += Count(a[i]) * bumped + m_at(i);
    }

    Count deg_k = base + normals;
    if (tr && node_out)
        *node_out = make_trace(p.key() + " genus", rule::kGenus, deg_k, std::move(children));
    return deg_k;
}

/// deg K_B plus the genus the family would have if connected.
struct GenusReport {
    Count deg_K;
    Count genus_if_connected;  // 1 + deg_K / 2, conditional on connectedness
    ThickeningSpec thickening_used;
};

inline GenusReport genus_report(CountEngine& engine, const Problem& p, TraceBuilder* tr = nullptr,
                                TracePtr* node_out = nullptr) {
    ThickeningSpec t = choose_thickening(engine, p);
    Count deg_k = canonical_degree(engine, p, t, 0, tr, node_out);
    Count half = halve_exact(deg_k, "genus: deg K_B is odd");
    return {deg_k, Count(1) + half, std::move(t)};
}

}  // namespace curvecount
