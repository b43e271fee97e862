#pragma once

#include <cstddef>
#include <optional>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "curvecount/boundary.hpp"
#include "curvecount/count_value.hpp"
#include "curvecount/memo.hpp"
#include "curvecount/problem.hpp"
#include "curvecount/schubert.hpp"
#include "curvecount/trace.hpp"

namespace curvecount {

// The main recursion.
//
// Every count N_{d,n}(a.) with d >= 2 is reduced along a one-dimensional
// family carrying one marked section per condition. Writing m_i = -s_i^2
// for the section self-intersections, the tautological divisor class of
// the family satisfies, for any two designated conditions,
//
//   N(a_1, a_2+1, ...) = d N(a_1+a_2, ...) - [linear boundary sum]
//                        + N(a_1+1, a_2, ...) + d m_1 ,
//
// which shifts one unit of codimension between the two designated slots at
// fixed degree. Iterating the shift drains the first slot to a hyperplane
// (the factor-d rule, dropping the length) or pumps the second past n
// (vanishing). All other ingredients -- the boundary sums, the merged
// counts N(a_i+a_j, ...), and the m-values through the three-section
// identity
//
//   m_i = (s_i.R_j + s_i.R_l - s_j.R_l)/2
//         - N(merge(i,j)) - N(merge(i,l)) + N(merge(j,l))
//
// -- live at strictly smaller degree or strictly smaller length, so the
// recursion is well founded on (d, length) with the shift chain evaluated
// in one pass. Degree 1 is exact Schubert calculus on G(1,n).

/// Which two slots the shift chain designates. All policies must produce
/// identical values; alternatives exist to test exactly that.
enum class PivotPolicy {
    LargestNext,      // drain the largest entry, pump the second largest
    LargestSmallest,  // drain the largest, pump the smallest
    SecondLargest,    // drain the second largest, pump the largest
    SmallestLargest,  // drain the smallest, pump the largest
};

class CountEngine {
  public:
    explicit CountEngine(PivotPolicy policy = PivotPolicy::LargestNext) : policy_(policy) {}

    MemoStore& memo() { return memo_; }
    const MemoStore& memo() const { return memo_; }
    PivotPolicy policy() const { return policy_; }

    /// N_{d,n}(conds): the number of degree-d rational curves in P^n
    /// meeting generic subspaces of the given codimensions.
    /// Requires excess 0; vanishes when some a_i > n.
    Count degree_count(const Problem& p) { return count_public(p, nullptr, nullptr); }

    Count degree_count(int n, int d, std::vector<int> conds) {
        return degree_count(Problem(n, d, std::move(conds)));
    }

    /// Traced variant; uses `tr` as the memo of record so the tree is
    /// complete even when this engine already holds values.
    std::pair<Count, TracePtr> degree_count_traced(const Problem& p, TraceBuilder& tr) {
        TracePtr node;
        Count v = count_public(p, &tr, &node);
        return {std::move(v), std::move(node)};
    }

    /// m_i = -s_i^2 for the section attached to condition i of the
    /// one-dimensional family p. Companions are the first two other
    /// conditions; with fewer than three conditions (degree 1 only) the
    /// vector is padded with hyperplane entries.
    Count m_section(const Problem& p, std::size_t i, TraceBuilder* tr = nullptr,
                    TracePtr* node_out = nullptr) {
        require_excess1(p);
        if (i >= p.conds.size()) throw InvalidInput("m_section: condition index out of range");
        Problem q = p;
        if (q.conds.size() < 3) {
            internal_check(q.d == 1, "m_section: padding reached at degree >= 2");
            std::vector<int> v = q.conds.codims();
            while (v.size() < 3) v.push_back(1);
            q = Problem(q.n, q.d, std::move(v));  // hyperplane entries sort last
        }
        auto [j, l] = default_companions(q, i);
        return m_value(q, i, j, l, tr, node_out);
    }

    /// m_section with an explicit companion pair (the value must not
    /// depend on the choice).
    Count m_section_with(const Problem& p, std::size_t i, std::size_t j, std::size_t l) {
        require_excess1(p);
        if (i == j || i == l || j == l || i >= p.conds.size() || j >= p.conds.size() ||
            l >= p.conds.size())
            throw InvalidInput("m_section_with: companion indices must be three distinct conditions");
        return m_value(p, i, j, l, nullptr, nullptr);
    }

    /// m_i from the two-section identity, valid when a_i = a_j:
    /// m = (s_i.R_j)/2 - N(merge(i,j)).
    Count m_section_symmetric(const Problem& p, std::size_t i, std::size_t j) {
        require_excess1(p);
        if (i == j || i >= p.conds.size() || j >= p.conds.size())
            throw InvalidInput("m_section_symmetric: need two distinct conditions");
        if (p.conds.at(i) != p.conds.at(j))
            throw InvalidInput("m_section_symmetric: conditions must have equal codimension");
        Count sr = section_dot_R(p, i, j);
        Count half = halve_exact(sr, "m_section_symmetric: odd s_i.R_j");
        return half - degree_count(Problem(p.n, p.d, p.conds.merged(i, j)));
    }

    /// s_i . R_j on the one-dimensional family p.
    Count section_dot_R(const Problem& p, std::size_t i, std::size_t j, TraceBuilder* tr = nullptr,
                        TracePtr* node_out = nullptr) {
        require_excess1(p);
        return traced_sum(p, i, j, SumKind::SectionDotR, tr, node_out);
    }

    /// Sum of (deg F)^2 over fiber components missing section i.
    Count boundary_square_sum(const Problem& p, std::size_t i, TraceBuilder* tr = nullptr,
                              TracePtr* node_out = nullptr) {
        require_excess1(p);
        return traced_sum(p, i, i, SumKind::SquareSum, tr, node_out);
    }

    /// Sum of deg F over components missing section i but meeting j.
    Count boundary_linear_sum(const Problem& p, std::size_t i, std::size_t j,
                              TraceBuilder* tr = nullptr, TracePtr* node_out = nullptr) {
        require_excess1(p);
        return traced_sum(p, i, j, SumKind::LinearSum, tr, node_out);
    }

    /// Residual of the square identity on the one-dimensional family p:
    ///   N(2, a.) - 2d N(a_1+1, ...) - d^2 m_1 + sum (deg F)^2 .
    /// The contract is a zero residual.
    Count square_identity_residual(const Problem& p, TraceBuilder* tr = nullptr,
                                   TracePtr* node_out = nullptr) {
        require_excess1(p);
        internal_check(!p.conds.empty(), "square identity: empty condition vector");
        std::vector<TracePtr> children;
        Count lhs = count_child(Problem(p.n, p.d, p.conds.with_entry(2)), tr, &children);
        Count bumped = count_child(Problem(p.n, p.d, p.conds.incremented(0)), tr, &children);
        Count m1 = m_child(p, 0, tr, &children);
        TracePtr sq_node;
        Count sq = boundary_square_sum(p, 0, tr, tr ? &sq_node : nullptr);
        if (tr && sq_node) TraceBuilder::attach(children, sq_node);
        Count residual = lhs - (Count(2) * p.d * bumped + Count(p.d) * p.d * m1 - sq);
        if (tr && node_out)
            *node_out = make_trace(p.key() + " check", rule::kSquareCheck, residual, std::move(children));
        return residual;
    }

    /// Same residual in the point case a_1 = n, a_2 + a_3 > n, where the
    /// bumped term vanishes:  N(2, n, a_2, ...) - d^2 m_1 + sum (deg F)^2.
    Count point_square_identity_residual(const Problem& p, TraceBuilder* tr = nullptr,
                                         TracePtr* node_out = nullptr) {
        require_excess1(p);
        const auto& a = p.conds.codims();
        if (a.size() < 3 || a[0] != p.n || a[1] + a[2] <= p.n)
            throw InvalidInput("point square identity requires a_1 = n and a_2 + a_3 > n");
        std::vector<TracePtr> children;
        Count lhs = count_child(Problem(p.n, p.d, p.conds.with_entry(2)), tr, &children);
        Count m1 = m_child(p, 0, tr, &children);
        TracePtr sq_node;
        Count sq = boundary_square_sum(p, 0, tr, tr ? &sq_node : nullptr);
        if (tr && sq_node) TraceBuilder::attach(children, sq_node);
        Count residual = lhs - (Count(p.d) * p.d * m1 - sq);
        if (tr && node_out)
            *node_out = make_trace(p.key() + " check", rule::kPointSquareCheck, residual,
                                   std::move(children));
        return residual;
    }

    /// Evaluator handle for the boundary module.
    CountFn evaluator() {
        return [this](const Problem& q) { return degree_count(q); };
    }

  private:
    enum class SumKind { SectionDotR, LinearSum, SquareSum };

    struct Frame {
        int d;
        int length;
    };

    // Recursion guard: every nested count must drop (d, length)
    // lexicographically relative to its enclosing count.
    class FrameGuard {
      public:
        FrameGuard(int d, int length) {
            auto& st = stack();
            if (!st.empty()) {
                const Frame& top = st.back();
                internal_check(d < top.d || (d == top.d && length < top.length),
                               "recursion did not decrease (degree, length)");
            }
            st.push_back({d, length});
        }
        ~FrameGuard() { stack().pop_back(); }
        static std::vector<Frame>& stack() {
            thread_local std::vector<Frame> frames;
            return frames;
        }
    };

    static void require_excess1(const Problem& p) {
        int e = excess_dimension(p);
        if (e != 1) throw DimensionMismatch(e);
    }

    static std::pair<std::size_t, std::size_t> default_companions(const Problem& p, std::size_t pin) {
        std::vector<std::size_t> others;
        for (std::size_t t = 0; t < p.conds.size() && others.size() < 2; ++t)
            if (t != pin) others.push_back(t);
        internal_check(others.size() == 2, "m_section: fewer than three sections");
        return {others[0], others[1]};
    }

    std::pair<std::size_t, std::size_t> pick_pivots(const ConditionVector& v) const {
        const std::size_t k = v.size();
        switch (policy_) {
            case PivotPolicy::LargestNext: return {0, 1};
            case PivotPolicy::LargestSmallest: return {0, k - 1};
            case PivotPolicy::SecondLargest: return {1, 0};
            case PivotPolicy::SmallestLargest: return {k - 1, 0};
        }
        throw InvalidInput("unknown pivot policy");
    }

    // Entry point shared by the plain and traced public calls.
    Count count_public(const Problem& p, TraceBuilder* tr, TracePtr* node_out) {
        int excess = excess_dimension(p);
        if (excess != 0) throw DimensionMismatch(excess);
        Canonicalized canon = canonicalize(p);
        if (canon.vanishes) {
            if (tr && node_out) *node_out = make_trace(p.key(), rule::kVanish, 0);
            return 0;
        }
        TracePtr inner;
        Count value = count_canonical(canon.problem, tr, tr ? &inner : nullptr);
        Count result = canon.factor * value;
        if (tr && node_out) {
            if (canon.problem.conds.size() != p.conds.size())
                *node_out = make_trace(p.key(), rule::kHyperplane, result, {inner});
            else
                *node_out = inner;
        }
        return result;
    }

    // p is canonical: excess 0, entries in [2, n], descending.
    Count count_canonical(const Problem& p, TraceBuilder* tr, TracePtr* node_out) {
        internal_check(!p.conds.empty(), "canonical count with empty conditions");
        MemoKey key = MemoKey::of(p);
        if (tr) {
            if (TracePtr hit = tr->find(key.str())) {
                if (node_out) *node_out = hit;
                return hit->value;
            }
        } else if (auto hit = memo_.lookup(key)) {
            return *hit;
        }

        Count value;
        TracePtr node;
        if (p.d == 1) {
            FrameGuard guard(p.d, p.conds.length());
            value = line_count(p.n, p.conds);
            if (tr) node = make_trace(key.str(), rule::kBaseSchubert, value);
        } else {
            value = chain_value(p, key, tr, tr ? &node : nullptr);
        }
        internal_check(value >= 0, "negative degree count");
        memo_.store(key, value);
        if (tr) {
            tr->remember(node);
            if (node_out) *node_out = node;
        }
        return value;
    }

    // The shift chain for d >= 2, evaluated as one telescoping pass so the
    // intermediate same-degree, same-length counts never re-enter the
    // recursion.
    Count chain_value(const Problem& p, const MemoKey& target_key, TraceBuilder* tr,
                      TracePtr* node_out) {
        FrameGuard guard(p.d, p.conds.length());
        const ConditionVector& v = p.conds;
        internal_check(v.size() >= 4, "shift chain requires at least four conditions");
        auto [drain_i, pump_i] = pick_pivots(v);
        const int drain0 = v.at(drain_i);
        const int pump0 = v.at(pump_i);
        std::vector<int> rest;
        for (std::size_t t = 0; t < v.size(); ++t)
            if (t != drain_i && t != pump_i) rest.push_back(v.at(t));

        struct Step {
            Count diff;                       // N(t) - N(t+1)
            std::optional<MemoKey> self_key;  // key of N(t), when storable
            std::vector<TracePtr> children;
        };
        std::vector<Step> steps;
        Count remaining;
        TracePtr terminal;
        std::string terminal_key;

        auto problem_at = [&](int t) {
            std::vector<int> w = rest;
            w.push_back(drain0 - t);
            w.push_back(pump0 + t);
            return Problem(p.n, p.d, std::move(w));
        };

        for (int t = 0;; ++t) {
            const int v1 = drain0 - t;
            const int v2 = pump0 + t;
            internal_check(v1 >= 1, "shift chain ran past the hyperplane floor");
            if (v2 > p.n) {
                remaining = 0;
                if (tr) {
                    std::vector<int> w = rest;
                    w.push_back(v1);
                    w.push_back(v2);
                    Problem gone(p.n, p.d, std::move(w));
                    terminal = make_trace(gone.key(), rule::kVanish, 0);
                }
                break;
            }
            if (v1 == 1) {
                std::vector<int> w = rest;
                w.push_back(v2);
                Problem shorter(p.n, p.d, std::move(w));
                TracePtr sub;
                remaining = Count(p.d) * count_canonical(shorter, tr, tr ? &sub : nullptr);
                if (tr) {
                    std::vector<int> w1 = rest;
                    w1.push_back(1);
                    w1.push_back(v2);
                    Problem full(p.n, p.d, std::move(w1));
                    terminal = make_trace(full.key(), rule::kHyperplane, remaining, {sub});
                }
                break;
            }
            if (t > 0 && !tr) {
                MemoKey ikey = MemoKey::of(problem_at(t));
                if (ikey != target_key) {
                    if (auto hit = memo_.lookup(ikey)) {
                        remaining = *hit;
                        break;
                    }
                }
            }

            // One application of the shift on the family (v1-1, v2, rest).
            std::vector<int> qv = rest;
            qv.push_back(v1 - 1);
            qv.push_back(v2);
            Problem q(p.n, p.d, std::move(qv));
            std::size_t pin_pump = q.conds.index_of(v2);
            std::size_t pin_drain = q.conds.index_of(v1 - 1, {pin_pump});

            Step step;
            std::vector<int> mv = rest;
            mv.push_back(v1 - 1 + v2);
            Count merged = count_child(Problem(p.n, p.d, std::move(mv)), tr, &step.children);
            TracePtr lin_node;
            Count lin = boundary_linear_sum(q, pin_drain, pin_pump, tr, tr ? &lin_node : nullptr);
            if (tr && lin_node) TraceBuilder::attach(step.children, lin_node);
            Count m = m_child(q, pin_drain, tr, &step.children);

            step.diff = -Count(p.d) * merged + lin - Count(p.d) * m;
            if (t > 0) {
                MemoKey ikey = MemoKey::of(problem_at(t));
                if (ikey != target_key) step.self_key = std::move(ikey);
            }
            steps.push_back(std::move(step));
        }

        // Telescope back, memoizing the interior values of the chain.
        Count value = remaining;
        TracePtr below = terminal;
        for (std::size_t idx = steps.size(); idx-- > 0;) {
            Step& step = steps[idx];
            if (tr && below) TraceBuilder::attach(step.children, below);
            value = step.diff + value;
            internal_check(value >= 0, "negative count inside shift chain");
            if (step.self_key) memo_.store(*step.self_key, value);
            if (tr) {
                std::string k = idx == 0 ? target_key.str() : problem_at(static_cast<int>(idx)).key();
                below = make_trace(k, rule::kWeightShift, value, std::move(step.children));
            }
        }
        if (steps.empty() && tr && !below)
            below = make_trace(target_key.str(), rule::kWeightShift, value, {});
        if (tr && node_out) *node_out = below;
        return value;
    }

    // Nested count used by the chain, the m-values and the checks;
    // evaluates through the public pipeline and optionally records a child.
    Count count_child(const Problem& p, TraceBuilder* tr, std::vector<TracePtr>* children) {
        TracePtr node;
        Count v = count_public(p, tr, tr ? &node : nullptr);
        if (tr && node && children) TraceBuilder::attach(*children, node);
        return v;
    }

    Count m_child(const Problem& p, std::size_t pin, TraceBuilder* tr,
                  std::vector<TracePtr>* children) {
        TracePtr node;
        Count v = m_section(p, pin, tr, tr ? &node : nullptr);
        if (tr && node && children) TraceBuilder::attach(*children, node);
        return v;
    }

    // Three-section identity. p has at least three conditions here.
    Count m_value(const Problem& p, std::size_t i, std::size_t j, std::size_t l, TraceBuilder* tr,
                  TracePtr* node_out) {
        std::string mkey = p.key() + " m[" + std::to_string(i) + "]";
        if (tr) {
            if (TracePtr hit = tr->find(mkey)) {
                if (node_out) *node_out = hit;
                return hit->value;
            }
        } else {
            std::shared_lock lock(m_mu_);
            auto it = m_memo_.find({MemoKey::of(p), i});
            if (it != m_memo_.end()) return it->second;
        }

        std::vector<TracePtr> children;
        TracePtr n1, n2, n3;
        Count sr_ij = section_dot_R(p, i, j, tr, tr ? &n1 : nullptr);
        Count sr_il = section_dot_R(p, i, l, tr, tr ? &n2 : nullptr);
        Count sr_jl = section_dot_R(p, j, l, tr, tr ? &n3 : nullptr);
        if (tr) {
            TraceBuilder::attach(children, n1);
            TraceBuilder::attach(children, n2);
            TraceBuilder::attach(children, n3);
        }
        Count half = halve_exact(sr_ij + sr_il - sr_jl, "m-value: boundary combination is odd");
        Count n_ij = count_child(Problem(p.n, p.d, p.conds.merged(i, j)), tr, &children);
        Count n_il = count_child(Problem(p.n, p.d, p.conds.merged(i, l)), tr, &children);
        Count n_jl = count_child(Problem(p.n, p.d, p.conds.merged(j, l)), tr, &children);
        Count m = half - n_ij - n_il + n_jl;

        if (tr) {
            TracePtr node = make_trace(mkey, rule::kSectionM, m, std::move(children));
            tr->remember(node);
            if (node_out) *node_out = node;
        } else {
            std::unique_lock lock(m_mu_);
            m_memo_.insert_or_assign({MemoKey::of(p), i}, m);
        }
        return m;
    }

    Count traced_sum(const Problem& p, std::size_t i, std::size_t j, SumKind kind, TraceBuilder* tr,
                     TracePtr* node_out) {
        std::vector<TracePtr> children;
        CountFn fn = [this, tr, &children](const Problem& q) {
            return count_child(q, tr, tr ? &children : nullptr);
        };
        Count total = 0;
        const char* label = "";
        switch (kind) {
            case SumKind::SectionDotR: {
                for (const auto& s : enumerate_splittings(p, i, j, fn)) total += s.weight;
                label = " sR[";
                break;
            }
            case SumKind::LinearSum: {
                for (const auto& s : enumerate_splittings(p, i, j, fn))
                    total += Count(s.d2) * s.weight;
                label = " lin[";
                break;
            }
            case SumKind::SquareSum: {
                for (const auto& s : enumerate_splittings(p, i, std::nullopt, fn))
                    total += Count(s.d2) * s.d2 * s.weight;
                label = " sq[";
                break;
            }
        }
        if (tr && node_out) {
            std::string key = p.key() + label + std::to_string(i) +
                              (kind == SumKind::SquareSum ? "" : "," + std::to_string(j)) + "]";
            *node_out = make_trace(std::move(key), rule::kSplitting, total, std::move(children));
        }
        return total;
    }

    PivotPolicy policy_;
    MemoStore memo_;
    mutable std::shared_mutex m_mu_;
    std::map<std::pair<MemoKey, std::size_t>, Count> m_memo_;
};

}  // namespace curvecount
