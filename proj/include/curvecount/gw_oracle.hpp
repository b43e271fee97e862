#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "curvecount/condition_vector.hpp"
#include "curvecount/count_value.hpp"
#include "curvecount/errors.hpp"
#include "curvecount/memo.hpp"
#include "curvecount/schubert.hpp"

namespace curvecount {

// Genus-0 Gromov-Witten invariants of P^n with hyperplane-power
// insertions, computed from the associativity (WDVV) constraints of the
// quantum product. This is a deliberately separate code path from the
// main recursion: the two share only the degree-1 Schubert floor, so
// agreement between them is meaningful evidence rather than circularity.
//
// The working relation, for insertion classes H^(p+1), H^r, H^s and a
// spectator multiset G at degree d, reads
//
//   <H^(p+1) H^r H^s G> = <H^p H^r H^(s+1) G> + d <H^(p+r) H^s G>
//                         - d <H^p H^(r+s) G> + (split terms),
//
// where the split terms range over degree splittings d1 + d2 = d with
// d1, d2 >= 1, partitions of G, and the diagonal classes H^e (x) H^(n-e).
// Iterating the relation drains one slot to a divisor insertion (the
// divisor axiom then drops the insertion count) or pumps another past n
// (the zero class); the split terms recurse at strictly smaller degree.

class GwOracle {
  public:
    explicit GwOracle(int n) : n_(n) {
        if (n < 3) throw InvalidInput("GwOracle: n >= 3 required");
    }

    int n() const { return n_; }

    /// Supported envelope: degree 1 for any n, else n = 3 with d <= 4 or
    /// n = 4 with d <= 2.
    static bool in_envelope(int n, int d) {
        return d == 1 || (n == 3 && d <= 4) || (n == 4 && d <= 2);
    }

    /// <H^{a_1} ... H^{a_k}>_d. Requires excess 0; codim-1 insertions obey
    /// the divisor rule, insertions above n give the zero class.
    Count gw_invariant(int d, const ConditionVector& insertions) {
        if (d < 1) throw InvalidInput("gw_invariant: d >= 1 required");
        if (!in_envelope(n_, d))
            throw InvalidInput("gw_invariant: outside the supported envelope (d = 1 any n; n = 3, d <= 4; n = 4, d <= 2)");
        int excess = (n_ + 1) * d + n_ - 3 - insertions.weight();
        if (excess != 0) throw DimensionMismatch(excess);
        return eval(d, insertions.codims());
    }

  private:
    // Normalizing evaluator: strips divisor insertions, handles the zero
    // class, then recurses through the associativity relation.
    Count eval(int d, std::vector<int> ins) {
        internal_check(d >= 1, "gw eval: nonpositive degree");
        Count factor = 1;
        std::vector<int> kept;
        kept.reserve(ins.size());
        for (int a : ins) {
            internal_check(a >= 1, "gw eval: insertion codimension < 1");
            if (a > n_) return 0;
            if (a == 1)
                factor *= d;
            else
                kept.push_back(a);
        }
        std::sort(kept.begin(), kept.end(), std::greater<int>());
        int weight = 0;
        for (int a : kept) weight += a - 1;
        internal_check(weight == (n_ + 1) * d + n_ - 3, "gw eval: dimension drift");

        if (d == 1) return factor * line_count(n_, ConditionVector(kept));

        MemoKey key{n_, d, kept};
        auto it = memo_.find(key);
        if (it != memo_.end()) return factor * it->second;

        internal_check(kept.size() >= 4, "gw eval: fewer than four insertions at d >= 2");
        const int drain0 = kept[0];
        const int pump0 = kept[1];
        const int spectator = kept[2];
        std::vector<int> gamma(kept.begin() + 3, kept.end());

        Count acc = 0;
        Count remaining = 0;
        for (int t = 0;; ++t) {
            const int v1 = drain0 - t;
            const int v2 = pump0 + t;
            internal_check(v1 >= 1, "gw chain ran past the divisor floor");
            if (v2 > n_) {
                remaining = 0;
                break;
            }
            if (v1 == 1) {
                std::vector<int> w = gamma;
                w.push_back(spectator);
                w.push_back(v2);
                remaining = Count(d) * eval(d, std::move(w));
                break;
            }
            const int p = v1 - 1;
            std::vector<int> w1 = gamma;
            w1.push_back(p + spectator);
            w1.push_back(v2);
            acc += Count(d) * eval(d, std::move(w1));
            std::vector<int> w2 = gamma;
            w2.push_back(p);
            w2.push_back(spectator + v2);
            acc -= Count(d) * eval(d, std::move(w2));
            acc += split_terms(p, spectator, v2, gamma, d);
        }
        Count value = acc + remaining;
        internal_check(value >= 0, "gw eval: negative invariant");
        memo_.emplace(std::move(key), value);
        return factor * value;
    }

    // Degree-splitting corrections of the relation: both factors carry
    // degree >= 1, with the diagonal insertion H^e fixed by dimension.
    Count split_terms(int p, int r, int s, const std::vector<int>& gamma, int d) {
        Count total = 0;
        const std::size_t g = gamma.size();
        for (int d1 = 1; d1 < d; ++d1) {
            const int d2 = d - d1;
            const int dim1 = (n_ + 1) * d1 + n_ - 3;
            for (std::size_t mask = 0; mask < (std::size_t{1} << g); ++mask) {
                std::vector<int> s1, s2;
                int sum1 = 0;
                for (std::size_t b = 0; b < g; ++b) {
                    if (mask & (std::size_t{1} << b)) {
                        s1.push_back(gamma[b]);
                        sum1 += gamma[b] - 1;
                    } else {
                        s2.push_back(gamma[b]);
                    }
                }
                {  // <H^p H^r H^e S1>_{d1} * d2 * <H^(n-e) H^s S2>_{d2}
                    const int e = dim1 + 1 - (p - 1) - (r - 1) - sum1;
                    if (e >= 1 && e <= n_ - 1) {
                        std::vector<int> f1 = s1;
                        f1.push_back(p);
                        f1.push_back(r);
                        f1.push_back(e);
                        std::vector<int> f2 = s2;
                        f2.push_back(n_ - e);
                        f2.push_back(s);
                        total += eval(d1, std::move(f1)) * d2 * eval(d2, std::move(f2));
                    }
                }
                {  // - d1 * <H^p H^e S1>_{d1} * <H^(n-e) H^r H^s S2>_{d2}
                    const int e = dim1 + 1 - (p - 1) - sum1;
                    if (e >= 1 && e <= n_ - 1) {
                        std::vector<int> f1 = s1;
                        f1.push_back(p);
                        f1.push_back(e);
                        std::vector<int> f2 = s2;
                        f2.push_back(n_ - e);
                        f2.push_back(r);
                        f2.push_back(s);
                        total -= Count(d1) * eval(d1, std::move(f1)) * eval(d2, std::move(f2));
                    }
                }
            }
        }
        return total;
    }

    int n_;
    std::map<MemoKey, Count> memo_;
};

}  // namespace curvecount
