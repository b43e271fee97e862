#pragma once

#include <map>
#include <utility>
#include <vector>

#include "curvecount/condition_vector.hpp"
#include "curvecount/count_value.hpp"
#include "curvecount/errors.hpp"

namespace curvecount {

// Schubert calculus on the Grassmannian G(1,n) of lines in P^n.
//
// The cohomology basis is indexed by partitions (l1, l2) with
// n-1 >= l1 >= l2 >= 0; the class of codimension l1 + l2 is the locus of
// lines in special position to a fixed flag. A line meeting a generic
// linear subspace of codimension a sweeps the special class sigma_{a-1},
// so every degree-1 count is a coefficient of the point class
// sigma_{(n-1, n-1)} in a product of special classes.
//
// Two independent routes are provided:
//   * pieri_product / line_count: iterated Pieri rule (production path);
//   * LineTable: a dense multiplication table built from two-variable
//     Schur polynomial arithmetic, sharing no code with the Pieri rule
//     (oracle path, also driven by the selfcheck command).

/// Partition (l1 >= l2 >= 0) indexing a Schubert class of G(1,n).
struct SchubertClass {
    int l1 = 0;
    int l2 = 0;

    int codim() const { return l1 + l2; }
    bool fits_box(int n) const { return l1 <= n - 1 && l1 >= l2 && l2 >= 0; }
    /// Poincare-dual partition inside the 2 x (n-1) box.
    SchubertClass complement(int n) const { return {n - 1 - l2, n - 1 - l1}; }

    friend bool operator==(const SchubertClass&, const SchubertClass&) = default;
    friend auto operator<=>(const SchubertClass&, const SchubertClass&) = default;
};

/// Formal integer combination of Schubert classes.
using SchubertSum = std::map<SchubertClass, Count>;

inline void add_term(SchubertSum& sum, const SchubertClass& cls, const Count& coeff) {
    if (coeff == 0) return;
    auto it = sum.find(cls);
    if (it == sum.end()) {
        sum.emplace(cls, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) sum.erase(it);
    }
}

/// Multiplies by the special class sigma_k on G(1,n):
/// each (l1,l2) maps to the sum of (m1,m2) with m1+m2 = l1+l2+k and
/// m1 >= l1 >= m2 >= l2; results outside the 2 x (n-1) box are dropped.
inline SchubertSum pieri_product(const SchubertSum& cls, int k, int n) {
    if (n < 3) throw InvalidInput("pieri_product: n >= 3 required");
    if (k < 1 || k > n - 1)
        throw InvalidInput("pieri_product: special class index out of range 1..n-1: " + std::to_string(k));
    SchubertSum out;
    for (const auto& [lam, coeff] : cls) {
        internal_check(lam.fits_box(n), "pieri_product: class outside box");
        for (int m2 = lam.l2; m2 <= lam.l1; ++m2) {
            int m1 = lam.codim() + k - m2;
            if (m1 < lam.l1 || m1 < m2 || m1 > n - 1) continue;
            add_term(out, {m1, m2}, coeff);
        }
    }
    return out;
}

/// Number of lines in P^n meeting generic subspaces of the given
/// codimensions: the point-class coefficient of the product of the
/// corresponding special classes. Codim-1 entries multiply by sigma_0 = 1.
inline Count line_count(int n, const ConditionVector& conds) {
    if (n < 3) throw InvalidInput("line_count: n >= 3 required");
    for (int a : conds.codims())
        if (a > n) throw InvalidInput("line_count: condition codimension exceeds n");
    if (conds.weight() != 2 * (n - 1)) throw DimensionMismatch(2 * (n - 1) - conds.weight());
    SchubertSum acc{{SchubertClass{0, 0}, Count(1)}};
    for (int a : conds.codims()) {
        if (a == 1) continue;
        acc = pieri_product(acc, a - 1, n);
        if (acc.empty()) return 0;
    }
    auto it = acc.find(SchubertClass{n - 1, n - 1});
    return it == acc.end() ? Count(0) : it->second;
}

/// All basis partitions of G(1,n), by codimension then lexicographically.
inline std::vector<SchubertClass> schubert_basis(int n) {
    std::vector<SchubertClass> basis;
    for (int c = 0; c <= 2 * (n - 1); ++c)
        for (int l2 = 0; 2 * l2 <= c; ++l2) {
            int l1 = c - l2;
            if (l1 <= n - 1) basis.push_back({l1, l2});
        }
    return basis;
}

/// Top codimension reached by the basis; equals dim G(1,n) = 2(n-1).
/// Counted from the basis itself so it can cross-check moduli_dimension.
inline int line_space_dimension(int n) {
    int top = 0;
    for (const auto& cls : schubert_basis(n)) top = std::max(top, cls.codim());
    return top;
}

namespace detail {

/// Symmetric polynomial in two variables, exponent pair -> coefficient.
using SymPoly = std::map<std::pair<int, int>, Count>;

/// s_(a,b)(x,y) = x^a y^b + x^(a-1) y^(b+1) + ... + x^b y^a.
inline SymPoly schur_poly(const SchubertClass& cls) {
    SymPoly p;
    for (int i = cls.l2; i <= cls.l1; ++i) p[{i, cls.codim() - i}] = 1;
    return p;
}

inline SymPoly poly_mul(const SymPoly& a, const SymPoly& b) {
    SymPoly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            auto key = std::make_pair(ea.first + eb.first, ea.second + eb.second);
            auto it = out.find(key);
            if (it == out.end())
                out.emplace(key, ca * cb);
            else {
                it->second += ca * cb;
                if (it->second == 0) out.erase(it);
            }
        }
    return out;
}

/// Expands a symmetric polynomial in the Schur basis by repeatedly
/// stripping the lexicographically leading monomial.
inline SchubertSum schur_decompose(SymPoly p) {
    SchubertSum out;
    while (!p.empty()) {
        auto lead = std::prev(p.end());  // largest (x-exponent, y-exponent)
        auto [exps, coeff] = *lead;
        internal_check(exps.first >= exps.second, "schur_decompose: non-symmetric input");
        SchubertClass cls{exps.first, exps.second};
        out[cls] = coeff;
        for (const auto& [e, c] : schur_poly(cls)) {
            auto it = p.find(e);
            if (it == p.end())
                p.emplace(e, -coeff * c);
            else {
                it->second -= coeff * c;
                if (it->second == 0) p.erase(it);
            }
        }
    }
    return out;
}

}  // namespace detail

/// Dense multiplication table of the Schubert basis of G(1,n), computed by
/// two-variable Schur polynomial products (classes with l1 > n-1 span the
/// defining ideal and are discarded). Independent of the Pieri rule.
class LineTable {
  public:
    explicit LineTable(int n) : n_(n), basis_(schubert_basis(n)) {
        if (n < 3) throw InvalidInput("LineTable: n >= 3 required");
        for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = i;
        table_.resize(basis_.size());
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            table_[i].resize(basis_.size());
            for (std::size_t j = 0; j < basis_.size(); ++j) {
                auto prod = detail::schur_decompose(
                    detail::poly_mul(detail::schur_poly(basis_[i]), detail::schur_poly(basis_[j])));
                SchubertSum trimmed;
                for (const auto& [cls, coeff] : prod)
                    if (cls.fits_box(n)) trimmed.emplace(cls, coeff);
                table_[i][j] = std::move(trimmed);
            }
        }
    }

    int n() const { return n_; }
    const std::vector<SchubertClass>& basis() const { return basis_; }

    const SchubertSum& product(const SchubertClass& a, const SchubertClass& b) const {
        return table_[index_.at(a)][index_.at(b)];
    }

    SchubertSum multiply(const SchubertSum& sum, const SchubertClass& b) const {
        SchubertSum out;
        for (const auto& [cls, coeff] : sum)
            for (const auto& [res, c] : product(cls, b)) add_term(out, res, coeff * c);
        return out;
    }

    /// Table-driven counterpart of line_count.
    Count line_count(const ConditionVector& conds) const {
        for (int a : conds.codims())
            if (a > n_) throw InvalidInput("LineTable::line_count: codimension exceeds n");
        if (conds.weight() != 2 * (n_ - 1)) throw DimensionMismatch(2 * (n_ - 1) - conds.weight());
        SchubertSum acc{{SchubertClass{0, 0}, Count(1)}};
        for (int a : conds.codims()) {
            if (a == 1) continue;
            acc = multiply(acc, {a - 1, 0});
            if (acc.empty()) return 0;
        }
        auto it = acc.find(SchubertClass{n_ - 1, n_ - 1});
        return it == acc.end() ? Count(0) : it->second;
    }

    /// Poincare pairing from the table: point-class coefficient of a * b.
    Count pairing(const SchubertClass& a, const SchubertClass& b) const {
        const auto& prod = product(a, b);
        auto it = prod.find(SchubertClass{n_ - 1, n_ - 1});
        return it == prod.end() ? Count(0) : it->second;
    }

  private:
    int n_;
    std::vector<SchubertClass> basis_;
    std::map<SchubertClass, std::size_t> index_;
    std::vector<std::vector<SchubertSum>> table_;
};

}  // namespace curvecount
